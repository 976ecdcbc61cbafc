#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace folicalc {

inline constexpr int kMaxJetVars = 6;

/// Second-order forward-mode jet: a value together with its gradient and
/// Hessian with respect to the patch coordinates.
///
/// The `order` field tracks how many derivative levels are still exact.
/// Taking a partial derivative lowers it by one; binary operations keep the
/// minimum of their operands. Reading a derivative that is no longer exact
/// throws, which catches pipelines that silently run out of differentiability.
template <class T>
class Jet {
 public:
  using value_type = T;

  Jet() = default;
  Jet(T v) : v_(v) {}  // NOLINT: constants promote implicitly

  template <class U>
    requires(std::is_same_v<T, std::complex<double>> && std::is_same_v<U, double>)
  explicit Jet(const Jet<U>& o) : v_(o.v_), n_(o.n_), order_(o.order_) {
    for (int i = 0; i < n_; ++i) g_[i] = o.g_[i];
    for (int i = 0; i < kMaxJetVars * kMaxJetVars; ++i) h_[i] = o.h_[i];
  }

  static Jet variable(T v, int index, int nvars) {
    if (nvars > kMaxJetVars || index < 0 || index >= nvars)
      throw std::out_of_range("jet variable index out of range");
    Jet j(v);
    j.n_ = nvars;
    j.g_[index] = T(1);
    return j;
  }

  int vars() const { return n_; }
  int order() const { return order_; }
  const T& value() const { return v_; }

  T d(int i) const {
    require(1);
    return i < n_ ? g_[i] : T(0);
  }
  T d2(int i, int j) const {
    require(2);
    return (i < n_ && j < n_) ? h_[i * kMaxJetVars + j] : T(0);
  }

  /// Partial derivative along coordinate i as a jet of one lower order.
  Jet partial(int i) const {
    require(1);
    Jet r;
    r.n_ = n_;
    r.order_ = order_ - 1;
    if (i >= n_) return r;
    r.v_ = g_[i];
    if (r.order_ >= 1)
      for (int k = 0; k < n_; ++k) r.g_[k] = h_[i * kMaxJetVars + k];
    return r;
  }

  /// Applies a scalar function given its value and first two derivatives at v.
  Jet chain(T f0, T f1, T f2) const {
    Jet r;
    r.n_ = n_;
    r.order_ = order_;
    r.v_ = f0;
    if (order_ >= 1)
      for (int i = 0; i < n_; ++i) r.g_[i] = f1 * g_[i];
    if (order_ >= 2)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          r.h_[i * kMaxJetVars + j] = f1 * h_[i * kMaxJetVars + j] + f2 * g_[i] * g_[j];
    return r;
  }

  /// Applies a real-linear map to every component (value and derivatives).
  template <class U, class F>
  Jet<U> transform(F f) const {
    Jet<U> r;
    r.n_ = n_;
    r.order_ = order_;
    r.v_ = f(v_);
    for (int i = 0; i < n_; ++i) r.g_[i] = f(g_[i]);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.h_[i * kMaxJetVars + j] = f(h_[i * kMaxJetVars + j]);
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    r.v_ = -r.v_;
    for (int i = 0; i < n_; ++i) r.g_[i] = -r.g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.h_[i * kMaxJetVars + j] = -r.h_[i * kMaxJetVars + j];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    widen(o);
    v_ += o.v_;
    for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) h_[i * kMaxJetVars + j] += o.h_[i * kMaxJetVars + j];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    widen(o);
    v_ -= o.v_;
    for (int i = 0; i < n_; ++i) g_[i] -= o.g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) h_[i * kMaxJetVars + j] -= o.h_[i * kMaxJetVars + j];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.n_ = a.n_ > b.n_ ? a.n_ : b.n_;
    r.order_ = a.order_ < b.order_ ? a.order_ : b.order_;
    r.v_ = a.v_ * b.v_;
    const int n = r.n_;
    if (r.order_ >= 1)
      for (int i = 0; i < n; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    if (r.order_ >= 2)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int k = i * kMaxJetVars + j;
          r.h_[k] = a.v_ * b.h_[k] + b.v_ * a.h_[k] + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
        }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet reciprocal(const Jet& b) {
    const T inv = T(1) / b.v_;
    return b.chain(inv, -inv * inv, T(2) * inv * inv * inv);
  }

 private:
  template <class U>
  friend class Jet;

  void require(int k) const {
    if (order_ < k) throw std::logic_error("jet derivative requested beyond exact order");
  }
  void widen(const Jet& o) {
    if (o.n_ > n_) n_ = o.n_;
    if (o.order_ < order_) order_ = o.order_;
  }

  T v_{};
  std::array<T, kMaxJetVars> g_{};
  std::array<T, kMaxJetVars * kMaxJetVars> h_{};
  int n_ = 0;
  int order_ = 2;
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

template <class T>
Jet<T> operator+(const Jet<T>& a, T b) { return a + Jet<T>(b); }
template <class T>
Jet<T> operator+(T a, const Jet<T>& b) { return Jet<T>(a) + b; }
template <class T>
Jet<T> operator-(const Jet<T>& a, T b) { return a - Jet<T>(b); }
template <class T>
Jet<T> operator-(T a, const Jet<T>& b) { return Jet<T>(a) - b; }
template <class T>
Jet<T> operator*(const Jet<T>& a, T b) { return a * Jet<T>(b); }
template <class T>
Jet<T> operator*(T a, const Jet<T>& b) { return Jet<T>(a) * b; }
template <class T>
Jet<T> operator/(const Jet<T>& a, T b) { return a * Jet<T>(T(1) / b); }
template <class T>
Jet<T> operator/(T a, const Jet<T>& b) { return Jet<T>(a) / b; }

inline CJet operator*(const CJet& a, double b) { return a * std::complex<double>(b); }
inline CJet operator*(double a, const CJet& b) { return std::complex<double>(a) * b; }
inline CJet operator+(const CJet& a, double b) { return a + std::complex<double>(b); }
inline CJet operator+(double a, const CJet& b) { return std::complex<double>(a) + b; }
inline CJet operator-(const CJet& a, double b) { return a - std::complex<double>(b); }
inline CJet operator-(double a, const CJet& b) { return std::complex<double>(a) - b; }
inline CJet operator/(const CJet& a, double b) { return a * std::complex<double>(1.0 / b); }

template <class T>
Jet<T> sqrt(const Jet<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.value());
  return x.chain(s, T(0.5) / s, T(-0.25) / (s * x.value()));
}

template <class T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  const T e = exp(x.value());
  return x.chain(e, e, e);
}

template <class T>
Jet<T> log(const Jet<T>& x) {
  using std::log;
  const T inv = T(1) / x.value();
  return x.chain(log(x.value()), inv, -inv * inv);
}

template <class T>
Jet<T> sin(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  const T s = sin(x.value());
  return x.chain(s, cos(x.value()), -s);
}

template <class T>
Jet<T> cos(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  const T c = cos(x.value());
  return x.chain(c, -sin(x.value()), -c);
}

template <class T>
Jet<T> pow(const Jet<T>& x, int k) {
  using std::pow;
  const T v = x.value();
  if (k == 0) return Jet<T>(T(1));
  const T f0 = pow(v, k);
  const T f1 = T(k) * pow(v, k - 1);
  const T f2 = k >= 2 || k < 0 ? T(k) * T(k - 1) * pow(v, k - 2) : T(0);
  return x.chain(f0, f1, f2);
}

/// Complex conjugate of a complex jet of real variables.
inline CJet conj(const CJet& x) {
  return x.transform<std::complex<double>>([](std::complex<double> z) { return std::conj(z); });
}

inline RJet real_part(const CJet& x) {
  return x.transform<double>([](std::complex<double> z) { return z.real(); });
}

inline RJet imag_part(const CJet& x) {
  return x.transform<double>([](std::complex<double> z) { return z.imag(); });
}

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> x) { return std::abs(x); }
template <class T>
double magnitude(const Jet<T>& x) {
  return magnitude(x.value());
}

}  // namespace folicalc
