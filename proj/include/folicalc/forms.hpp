#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/jet.hpp"

namespace folicalc {

/// Complex differential form on C^n with jet coefficients, in the basis
/// dz_1..dz_n (indices 0..n-1) and dzbar_1..dzbar_n (indices n..2n-1).
/// Terms are keyed by strictly increasing index tuples. Real coordinates are
/// ordered (x_1, y_1, ..., x_n, y_n) with z_k = x_k + i y_k.
class Form {
 public:
  using Index = std::vector<int>;

  Form(int complex_dim, int degree) : n_(complex_dim), degree_(degree) {}

  int complex_dim() const { return n_; }
  int degree() const { return degree_; }
  const std::map<Index, CJet>& terms() const { return terms_; }

  /// Adds coeff * e_{i_1} ^ ... ^ e_{i_k} for an arbitrary index order.
  void add(Index indices, const CJet& coeff);

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;

  /// Value on real tangent vectors given by coordinate components.
  std::complex<double> evaluate(std::span<const std::vector<double>> vectors) const;

  double max_abs() const;

 private:
  int n_;
  int degree_;
  std::map<Index, CJet> terms_;
};

/// Wirtinger derivatives of a jet in the real coordinates (x_k, y_k).
CJet d_holomorphic(const CJet& f, int k);
CJet d_antiholomorphic(const CJet& f, int k);

Form del(const Form& form);
Form delbar(const Form& form);

/// Real 2-form sum_{i<j} f_ij dxbar_i ^ dxbar_j over (dx_1, dy_1, ...),
/// rewritten in the complex basis.
Form from_real_two_form(const Dense<RJet>& coefficients, int complex_dim);

}  // namespace folicalc
