#pragma once

#include <algorithm>
#include <vector>

#include "eismeas/characters.hpp"
#include "eismeas/linalg.hpp"

namespace eismeas {

template <class S>
class QExpansion {
 public:
  QExpansion() = default;
  explicit QExpansion(std::size_t precision) : coeffs_(precision, S(0)) {}
  explicit QExpansion(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t precision() const { return coeffs_.size(); }
  const std::vector<S>& coeffs() const { return coeffs_; }
  S& operator[](std::size_t n) { return coeffs_[n]; }
  const S& operator[](std::size_t n) const { return coeffs_[n]; }

  QExpansion truncated(std::size_t q) const {
    return QExpansion(std::vector<S>(coeffs_.begin(), coeffs_.begin() + std::min(q, precision())));
  }

  friend QExpansion operator+(const QExpansion& a, const QExpansion& b) {
    QExpansion out(std::min(a.precision(), b.precision()));
    for (std::size_t n = 0; n < out.precision(); ++n) out[n] = a[n] + b[n];
    return out;
  }
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b) {
    QExpansion out(std::min(a.precision(), b.precision()));
    for (std::size_t n = 0; n < out.precision(); ++n) out[n] = a[n] - b[n];
    return out;
  }
  friend QExpansion operator*(const S& s, QExpansion f) {
    for (auto& c : f.coeffs_) c *= s;
    return f;
  }
  friend bool operator==(const QExpansion& a, const QExpansion& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<S> coeffs_;
};

// f | U_p: n-th coefficient a(pn), precision ceil(Q / p).
template <class S>
QExpansion<S> u_operator(const QExpansion<S>& f, unsigned long p) {
  if (f.precision() < p) throw InvalidArgument("u_operator: precision smaller than p");
  QExpansion<S> out((f.precision() + p - 1) / p);
  for (std::size_t n = 0; n < out.precision(); ++n) out[n] = f[p * n];
  return out;
}

// Keeps the coefficients with n = a mod level.
template <class S>
QExpansion<S> partial_form(const QExpansion<S>& f, long a, long level) {
  QExpansion<S> out(f.precision());
  for (std::size_t n = 0; n < f.precision(); ++n)
    if (mod(static_cast<long>(n), level) == mod(a, level)) out[n] = f[n];
  return out;
}

// chi(n) a_n with the modulus convention.
template <class S>
QExpansion<CyclotomicNumber> twist(const QExpansion<S>& f, const DirichletCharacter& chi) {
  QExpansion<CyclotomicNumber> out(f.precision());
  for (std::size_t n = 0; n < f.precision(); ++n) {
    auto v = chi.value(static_cast<long>(n));
    if (!v.is_zero()) out[n] = v * CyclotomicNumber(f[n]);
  }
  return out;
}

// f(q^d)
template <class S>
QExpansion<S> scale_argument(const QExpansion<S>& f, std::size_t d) {
  QExpansion<S> out(f.precision());
  for (std::size_t n = 0; n * d < f.precision(); ++n) out[n * d] = f[n];
  return out;
}

// Level-one Eisenstein series with constant term zeta(1-k)/2, i.e. -B_k/(2k) + sum sigma_{k-1}(n) q^n.
QExpansion<Rational> eisenstein_level_one(long k, std::size_t precision);

// A finite U-stable span with the matrix of U in the given basis (columns are images).
template <class S>
struct USpan {
  std::vector<QExpansion<S>> basis;
  Matrix<S> u_matrix;
  std::size_t shared_precision = 0;
};

// Coordinates of f in the span, checked on the first `precision` coefficients.
template <class S>
std::optional<std::vector<S>> coordinates_in_span(const std::vector<QExpansion<S>>& basis,
                                                  const QExpansion<S>& f, std::size_t precision) {
  Matrix<S> a(precision, basis.size());
  std::vector<S> b(precision, S(0));
  for (std::size_t n = 0; n < precision; ++n) {
    for (std::size_t j = 0; j < basis.size(); ++j) a(n, j) = basis[j][n];
    b[n] = f[n];
  }
  return solve_linear(a, b);
}

// Builds the U-matrix from q-expansions, applying U with `apply_u`. Throws if some image leaves the span.
template <class S, class ApplyU>
USpan<S> make_uspan(std::vector<QExpansion<S>> basis, ApplyU apply_u) {
  USpan<S> span;
  std::vector<QExpansion<S>> images;
  std::size_t q = basis.front().precision();
  for (const auto& f : basis) {
    images.push_back(apply_u(f));
    q = std::min(q, images.back().precision());
  }
  span.shared_precision = q;
  span.u_matrix = Matrix<S>(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto x = coordinates_in_span(basis, images[j], q);
    if (!x) throw ArithmeticError("make_uspan: U image is not in the span");
    for (std::size_t i = 0; i < basis.size(); ++i) span.u_matrix(i, j) = (*x)[i];
  }
  span.basis = std::move(basis);
  return span;
}

// Idempotent onto the generalized alpha-eigenspace: b(U) g(U) where chi_U = (X - alpha)^e g and
// a (X - alpha)^e + b g = 1. Zero if alpha is not an eigenvalue.
template <class S>
Matrix<S> projector_alpha(const Matrix<S>& u, const S& alpha) {
  const std::size_t n = u.rows();
  auto chi = characteristic_polynomial(u);
  auto lin = Polynomial<S>::linear_root(alpha);
  Polynomial<S> g = chi, power({S(1)});
  while (true) {
    auto [q, r] = g.divmod(lin);
    if (!r.is_zero_poly()) break;
    g = q;
    power = power * lin;
  }
  if (power.degree() == 0) return Matrix<S>(n, n);
  auto eg = extended_gcd(power, g);
  if (eg.gcd.degree() != 0) throw ArithmeticError("projector_alpha: factors are not coprime");
  return (eg.v * g).evaluate(u);
}

template <class S>
Matrix<S> projector_alpha(const USpan<S>& span, const S& alpha) {
  return projector_alpha(span.u_matrix, alpha);
}

// Applies pi_alpha to f given in the span.
template <class S>
QExpansion<S> project(const USpan<S>& span, const QExpansion<S>& f, const S& alpha) {
  auto x = coordinates_in_span(span.basis, f, span.shared_precision);
  if (!x) throw ArithmeticError("project: expansion is not in the span");
  auto y = projector_alpha(span, alpha).apply(*x);
  QExpansion<S> out(span.shared_precision);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t n = 0; n < out.precision(); ++n) out[n] += y[j] * span.basis[j][n];
  return out;
}

// Rational roots with multiplicity of a polynomial with rational coefficients.
std::vector<std::pair<Rational, int>> rational_roots(const Polynomial<Rational>& f);

}  // namespace eismeas
