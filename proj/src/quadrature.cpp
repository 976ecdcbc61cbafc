#include "folicalc/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "folicalc/errors.hpp"

namespace folicalc {

QuadratureRule gauss_legendre(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("quadrature needs at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  QuadratureRule rule;
  const double half = 0.5 * (hi - lo);
  for (int k = 0; k < count; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.nodes.push_back({lo + half * (es.eigenvalues()(k) + 1.0)});
    rule.weights.push_back(2.0 * v0 * v0 * half);
  }
  return rule;
}

QuadratureRule tensor_rule(const FramedPatch& patch, double refine) {
  if (!patch.has_fundamental_domain())
    throw QuadratureError("patch '" + patch.name + "' has no fundamental domain to integrate over");
  QuadratureRule rule;
  rule.nodes.push_back({});
  rule.weights.push_back(1.0);
  for (int axis = 0; axis < patch.dim; ++axis) {
    const QuadratureAxis& spec = patch.quadrature[axis];
    const int count = static_cast<int>(std::ceil(spec.nodes * refine - 1e-9));
    const Interval iv = patch.box[axis];
    QuadratureRule line;
    if (spec.periodic) {
      const double h = (iv.hi - iv.lo) / count;
      for (int k = 0; k < count; ++k) {
        line.nodes.push_back({iv.lo + (k + 0.5) * h});
        line.weights.push_back(h);
      }
    } else {
      line = gauss_legendre(count, iv.lo, iv.hi);
    }
    QuadratureRule next;
    for (std::size_t a = 0; a < rule.nodes.size(); ++a)
      for (std::size_t b = 0; b < line.nodes.size(); ++b) {
        Point x = rule.nodes[a];
        x.push_back(line.nodes[b][0]);
        next.nodes.push_back(std::move(x));
        next.weights.push_back(rule.weights[a] * line.weights[b]);
      }
    rule = std::move(next);
  }
  return rule;
}

Integral integrate(const FramedPatch& patch, const std::function<double(const Point&)>& integrand, double tolerance) {
  auto apply = [&](const QuadratureRule& rule) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += rule.weights[k] * integrand(rule.nodes[k]);
    return acc;
  };
  Integral out;
  out.value = apply(tensor_rule(patch, 1.0));
  out.refined = apply(tensor_rule(patch, 1.5));
  out.change = std::abs(out.refined - out.value);
  if (out.change > tolerance) {
    std::ostringstream os;
    os << "quadrature on '" << patch.name << "' did not converge: refinement changed the integral by " << out.change;
    throw QuadratureError(os.str());
  }
  return out;
}

}  // namespace folicalc
