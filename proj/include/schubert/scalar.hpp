#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <string>

namespace schubert {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;
using Cplx = std::complex<double>;

/// Scalar field operations used by the generic polynomial / linear algebra
/// code.  Exact fields test zero exactly; float fields use a relative
/// magnitude threshold supplied by the caller.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& x, double /*tol*/ = 0, double /*scale*/ = 1) { return x == 0; }
  static double magnitude(const Rat& x) { return std::abs(x.convert_to<double>()); }
  static Rat from_int(long long v) { return Rat(v); }
  static double to_double(const Rat& x) { return x.convert_to<double>(); }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol, double scale = 1) {
    return std::abs(x) <= tol * std::max(1.0, scale);
  }
  static double magnitude(double x) { return std::abs(x); }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarOps<Cplx> {
  static constexpr bool exact = false;
  static bool is_zero(const Cplx& x, double tol, double scale = 1) {
    return std::abs(x) <= tol * std::max(1.0, scale);
  }
  static double magnitude(const Cplx& x) { return std::abs(x); }
  static Cplx from_int(long long v) { return Cplx(static_cast<double>(v), 0.0); }
  static double to_double(const Cplx& x) { return x.real(); }
};

/// Parse a plain decimal string ("-1.25", "3") into an exact rational.
Rat rat_from_decimal(const std::string& s);

/// "p/q" (or "p" when q = 1).
std::string rat_to_string(const Rat& x);

}  // namespace schubert
