#include "folicalc/forms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace folicalc {

namespace {

using cd = std::complex<double>;

/// Sorts in place and returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(Form::Index& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

/// Value of the basis covector with index `b` on a real vector.
cd basis_on(int b, int n, const std::vector<double>& v) {
  const int k = b < n ? b : b - n;
  const double x = v[2 * k];
  const double y = v[2 * k + 1];
  return b < n ? cd(x, y) : cd(x, -y);
}

}  // namespace

void Form::add(Index indices, const CJet& coeff) {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("form degree mismatch");
  const int sign = sort_with_sign(indices);
  if (sign == 0) return;
  auto it = terms_.find(indices);
  const CJet signed_coeff = sign > 0 ? coeff : -coeff;
  if (it == terms_.end())
    terms_.emplace(std::move(indices), signed_coeff);
  else
    it->second += signed_coeff;
}

Form Form::operator+(const Form& o) const {
  Form out = *this;
  for (const auto& [idx, c] : o.terms_) out.add(idx, c);
  return out;
}

Form Form::operator-(const Form& o) const {
  Form out = *this;
  for (const auto& [idx, c] : o.terms_) out.add(idx, -c);
  return out;
}

std::complex<double> Form::evaluate(std::span<const std::vector<double>> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) throw std::invalid_argument("wrong number of vectors");
  cd total = 0.0;
  for (const auto& [idx, c] : terms_) {
    Eigen::MatrixXcd m(degree_, degree_);
    for (int a = 0; a < degree_; ++a)
      for (int b = 0; b < degree_; ++b) m(a, b) = basis_on(idx[a], n_, vectors[b]);
    total += c.value() * (degree_ == 0 ? cd(1.0) : m.determinant());
  }
  return total;
}

double Form::max_abs() const {
  double m = 0.0;
  for (const auto& [idx, c] : terms_) m = std::max(m, std::abs(c.value()));
  return m;
}

CJet d_holomorphic(const CJet& f, int k) {
  return 0.5 * (f.partial(2 * k) - cd(0.0, 1.0) * f.partial(2 * k + 1));
}

CJet d_antiholomorphic(const CJet& f, int k) {
  return 0.5 * (f.partial(2 * k) + cd(0.0, 1.0) * f.partial(2 * k + 1));
}

Form del(const Form& form) {
  const int n = form.complex_dim();
  Form out(n, form.degree() + 1);
  for (const auto& [idx, c] : form.terms())
    for (int k = 0; k < n; ++k) {
      Form::Index next{k};
      next.insert(next.end(), idx.begin(), idx.end());
      out.add(next, d_holomorphic(c, k));
    }
  return out;
}

Form delbar(const Form& form) {
  const int n = form.complex_dim();
  Form out(n, form.degree() + 1);
  for (const auto& [idx, c] : form.terms())
    for (int k = 0; k < n; ++k) {
      Form::Index next{n + k};
      next.insert(next.end(), idx.begin(), idx.end());
      out.add(next, d_antiholomorphic(c, k));
    }
  return out;
}

Form from_real_two_form(const Dense<RJet>& f, int n) {
  // dx_k = (dz_k + dzbar_k)/2, dy_k = (dz_k - dzbar_k)/(2i)
  auto real_covector = [n](int r) {
    const int k = r / 2;
    std::vector<std::pair<int, cd>> parts;
    if (r % 2 == 0) {
      parts = {{k, cd(0.5, 0.0)}, {n + k, cd(0.5, 0.0)}};
    } else {
      parts = {{k, cd(0.0, -0.5)}, {n + k, cd(0.0, 0.5)}};
    }
    return parts;
  };
  Form out(n, 2);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) {
      const CJet c(f(i, j));
      for (const auto& [a, wa] : real_covector(i))
        for (const auto& [b, wb] : real_covector(j)) out.add({a, b}, (wa * wb) * c);
    }
  return out;
}

}  // namespace folicalc
