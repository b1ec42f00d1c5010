#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include "schubert/errors.hpp"
#include "schubert/scalar.hpp"

namespace schubert {

/// Univariate polynomial over the scalar field S, coefficients stored by
/// ascending degree with a nonzero leading coefficient (or empty = zero).
template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<S> coeffs, double trim_tol = 0) : c_(std::move(coeffs)) {
    trim(trim_tol);
  }
  static Poly constant(S v) { return Poly(std::vector<S>{std::move(v)}); }
  static Poly one() { return constant(ScalarOps<S>::from_int(1)); }
  static Poly monomial(int degree, S v = ScalarOps<S>::from_int(1)) {
    std::vector<S> c(degree + 1, S{});
    c[degree] = std::move(v);
    return Poly(std::move(c));
  }
  static Poly from_roots(const std::vector<S>& roots) {
    Poly p = one();
    for (const S& r : roots) p = p * Poly(std::vector<S>{-r, ScalarOps<S>::from_int(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : S{};
  }
  S leading() const {
    if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
    return c_.back();
  }
  double max_coeff_magnitude() const {
    double m = 0;
    for (const S& x : c_) m = std::max(m, ScalarOps<S>::magnitude(x));
    return m;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<S> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * ScalarOps<S>::from_int(k);
    return Poly(std::move(d));
  }

  S eval(const S& x) const {
    S acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Monic normalization; the discarded scalar is reported through *scale.
  Poly monic(S* scale = nullptr) const {
    if (is_zero()) throw DomainError("cannot normalize the zero polynomial");
    S lead = c_.back();
    if (scale) *scale = lead;
    std::vector<S> out(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) out[k] = c_[k] / lead;
    return Poly(std::move(out));
  }

  /// Drop coefficients whose magnitude is below tol relative to the largest.
  void trim(double tol) {
    if (ScalarOps<S>::exact || tol <= 0) {
      while (!c_.empty() && ScalarOps<S>::is_zero(c_.back(), 0)) c_.pop_back();
      return;
    }
    double m = max_coeff_magnitude();
    while (!c_.empty() && ScalarOps<S>::magnitude(c_.back()) <= tol * m) c_.pop_back();
  }

  Poly operator+(const Poly& o) const {
    std::vector<S> out(std::max(c_.size(), o.c_.size()), S{});
    for (size_t k = 0; k < c_.size(); ++k) out[k] = out[k] + c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) out[k] = out[k] + o.c_[k];
    return Poly(std::move(out));
  }
  Poly operator-(const Poly& o) const { return *this + o * ScalarOps<S>::from_int(-1); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<S> out(c_.size() + o.c_.size() - 1, S{});
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] = out[i + j] + c_[i] * o.c_[j];
    return Poly(std::move(out));
  }
  Poly operator*(const S& v) const {
    std::vector<S> out = c_;
    for (S& x : out) x = x * v;
    return Poly(std::move(out));
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (int k = degree(); k >= 0; --k) {
      if (ScalarOps<S>::magnitude(coeff(k)) == 0) continue;
      if (os.tellp() > 0) os << " + ";
      os << coeff(k);
      if (k > 0) os << "*u^" << k;
    }
    return os.str();
  }

 private:
  std::vector<S> c_;
};

/// Maximum coefficient distance between two polynomials (absolute).
template <class S>
double coeff_distance(const Poly<S>& a, const Poly<S>& b) {
  double m = 0;
  int top = std::max(a.degree(), b.degree());
  for (int k = 0; k <= top; ++k) m = std::max(m, ScalarOps<S>::magnitude(a.coeff(k) - b.coeff(k)));
  return m;
}

template <class S>
Poly<S> convert_poly(const Poly<Rat>& p) {
  std::vector<S> out(p.coeffs().size());
  for (size_t k = 0; k < out.size(); ++k)
    out[k] = S(ScalarOps<Rat>::to_double(p.coeffs()[k]));
  return Poly<S>(std::move(out));
}

/// Determinant of the matrix of successive derivatives.  Zero iff the inputs
/// are linearly dependent; otherwise depends on the span only up to scalar.
template <class S>
Poly<S> wronskian(const std::vector<Poly<S>>& polys) {
  if (polys.empty()) throw DomainError("wronskian of an empty family");
  const int k = static_cast<int>(polys.size());
  std::vector<std::vector<Poly<S>>> rows(k, std::vector<Poly<S>>(k));
  rows[0] = polys;
  for (int i = 1; i < k; ++i)
    for (int j = 0; j < k; ++j) rows[i][j] = rows[i - 1][j].derivative();

  // cofactor expansion; k is small (the Grassmannian rank)
  std::vector<int> cols(k);
  for (int j = 0; j < k; ++j) cols[j] = j;
  struct Rec {
    const std::vector<std::vector<Poly<S>>>& m;
    Poly<S> det(int row, std::vector<int>& cols) {
      if (cols.size() == 1) return m[row][cols[0]];
      Poly<S> acc;
      for (size_t j = 0; j < cols.size(); ++j) {
        int col = cols[j];
        cols.erase(cols.begin() + j);
        Poly<S> minor = det(row + 1, cols);
        cols.insert(cols.begin() + j, col);
        Poly<S> term = m[row][col] * minor;
        acc = (j % 2 == 0) ? acc + term : acc - term;
      }
      return acc;
    }
  } rec{rows};
  return rec.det(0, cols);
}

/// Monic-normalized Wronskian with the discarded scalar reported.
template <class S>
Poly<S> monic_wronskian(const std::vector<Poly<S>>& polys, S* scale = nullptr,
                        double trim_tol = 0) {
  Poly<S> w = wronskian(polys);
  w.trim(trim_tol);
  if (w.is_zero()) throw DomainError("wronskian vanishes: linearly dependent family");
  return w.monic(scale);
}

}  // namespace schubert
