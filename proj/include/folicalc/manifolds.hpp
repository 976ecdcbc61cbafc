#pragma once

#include "folicalc/framed_patch.hpp"

namespace folicalc::manifolds {

/// T^4 with a constant frame; F spanned by the first two fields (linear foliation).
FramedPatch flat_torus();

/// S^2 x S^1 in (theta, phi, z) with F = TS^2 and the round unit sphere.
FramedPatch sphere_times_circle();

/// T^2-bundle over T^2 in (u1, u2, v1, v2). The fibres are the leaves, the
/// fibre metric is conformal with a factor that varies over the base and the
/// horizontal frame is twisted by sin(v1).
FramedPatch fibre_bundle();

/// T^4 with F spanned by d/dx1, d/dx2, a conformal leaf metric and a
/// transverse metric that varies along the leaves (not bundle-like).
FramedPatch warped_product();

/// T^2 with dt^2 + w(t)^2 dtheta^2, w = 2 + sin t, F spanned by d/dt.
FramedPatch warped_surface();

/// Unit S^3 in the chart (x, y, z) of the upper hemisphere, left-invariant
/// frame, F spanned by the Hopf fibre direction.
FramedPatch hopf();

/// Heisenberg group with left-invariant frame [e1, e2] = e3 and F = span{e1, e2}.
FramedPatch heisenberg();

/// Unit round S^n in stereographic coordinates with F = TS^n.
FramedPatch round_sphere(int n);

/// Hopf entry whose transverse metric is perturbed along the fibres; used as a
/// negative control by the self-check.
FramedPatch perturbed_hopf();

}  // namespace folicalc::manifolds
