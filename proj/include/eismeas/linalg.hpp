#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "eismeas/cyclotomic.hpp"

namespace eismeas {

// Dense matrix over an exact field S (Rational or CyclotomicNumber).
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = S(1);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("Matrix: shape mismatch in product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        if (is_zero(a(i, l))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, l) * b(l, j);
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    std::vector<S> out(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  S trace() const {
    S t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Matrix<S> matrix_power(Matrix<S> base, unsigned long e) {
  Matrix<S> out = Matrix<S>::identity(base.rows());
  while (e) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

// Any solution of A x = b, or nullopt if the system is inconsistent.
template <class S>
std::optional<std::vector<S>> solve_linear(Matrix<S> a, std::vector<S> b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && is_zero(a(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
      std::swap(b[piv], b[r]);
    }
    S inv = S(1) / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      S f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!is_zero(b[i])) return std::nullopt;
  std::vector<S> x(cols, S(0));
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = b[i];
  return x;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  Matrix<S> out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<S> e(n, S(0));
    e[j] = S(1);
    auto x = solve_linear(a, e);
    if (!x) return std::nullopt;
    // Uniqueness: a singular matrix still yields a particular solution, so verify.
    for (std::size_t i = 0; i < n; ++i) out(i, j) = (*x)[i];
  }
  if (!(a * out == Matrix<S>::identity(n))) return std::nullopt;
  return out;
}

// Polynomial over S, coefficients low to high, no trailing zeros (zero polynomial is empty).
template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<S> c) : c_(std::move(c)) { trim(); }
  static Polynomial monomial(std::size_t deg, const S& coeff = S(1)) {
    std::vector<S> c(deg + 1, S(0));
    c[deg] = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial linear_root(const S& alpha) { return Polynomial({-alpha, S(1)}); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero_poly() const { return c_.empty(); }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  S leading() const { return c_.back(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // (quotient, remainder)
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero_poly()) throw ArithmeticError("Polynomial: division by zero");
    std::vector<S> rem = c_;
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<S> q(c_.size() - d.c_.size() + 1, S(0));
    S inv = S(1) / d.leading();
    for (std::size_t i = q.size(); i-- > 0;) {
      S f = rem[i + d.c_.size() - 1] * inv;
      q[i] = f;
      if (is_zero(f)) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= f * d.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
  }

  S evaluate(const S& x) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Matrix<S> evaluate(const Matrix<S>& m) const {
    Matrix<S> acc(m.rows(), m.cols());
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * m + c_[i] * Matrix<S>::identity(m.rows());
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

// Bezout: u a + v b = gcd (monic).
template <class S>
struct ExtendedGcd {
  Polynomial<S> gcd, u, v;
};

template <class S>
ExtendedGcd<S> extended_gcd(const Polynomial<S>& a, const Polynomial<S>& b) {
  Polynomial<S> r0 = a, r1 = b;
  Polynomial<S> u0({S(1)}), u1, v0, v1({S(1)});
  while (!r1.is_zero_poly()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, r);
    u0 = std::exchange(u1, u0 - q * u1);
    v0 = std::exchange(v1, v0 - q * v1);
  }
  S inv = S(1) / r0.leading();
  Polynomial<S> c({inv});
  return {r0 * c, u0 * c, v0 * c};
}

// Faddeev-LeVerrier; exact over fields of characteristic zero.
template <class S>
Polynomial<S> characteristic_polynomial(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  std::vector<S> c(n + 1, S(0));
  c[n] = S(1);
  Matrix<S> m(n, n);
  const Matrix<S> id = Matrix<S>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    S tr = (a * m).trace();
    c[n - k] = tr * S(Rational(-1, static_cast<long>(k)));
  }
  return Polynomial<S>(std::move(c));
}

}  // namespace eismeas
