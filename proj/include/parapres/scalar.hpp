// Scalar configuration and the numeric kernel shared by every geometric test.
//
// Two scalar types back the whole library:
//   Rational             -- Real field, ExactRational mode; comparisons exact.
//   std::complex<double> -- Float mode, Real or Complex field; comparisons use
//                           the configured tolerances. Real-field data rides
//                           complex storage with exact zero imaginary parts,
//                           so unit phases come out as exactly +1/-1.
//
// All equality of norms is relative (norm_tol); unit scalars compare by angle
// (phase_tol, radians). Both tolerances are explicit because parallelism and
// triangle equality are equality conditions, not inequalities.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "parapres/rational.hpp"

namespace parapres {

using CD = std::complex<double>;

enum class Field { Real, Complex };
enum class Mode { ExactRational, Float };
enum class Pnorm { P1, PInf };

inline Pnorm dual_pnorm(Pnorm p) { return p == Pnorm::P1 ? Pnorm::PInf : Pnorm::P1; }

struct ScalarConfig {
  Field field = Field::Real;
  Mode mode = Mode::ExactRational;
  double norm_tol = 1e-9;   // relative tolerance for norm equality (Float)
  double phase_tol = 1e-9;  // angular tolerance for unit scalars, radians (Float)
  double rank_tol = 1e-9;   // relative singular-value cutoff (Float)

  void validate() const {
    if (mode == Mode::ExactRational && field != Field::Real)
      throw std::invalid_argument("ScalarConfig: exact-rational mode requires the real field");
    if (mode == Mode::Float && (norm_tol <= 0 || phase_tol <= 0))
      throw std::invalid_argument("ScalarConfig: float mode requires positive tolerances");
  }

  static ScalarConfig exact_real() { return {}; }
  static ScalarConfig float_real(double ntol = 1e-9, double ptol = 1e-9) {
    return {Field::Real, Mode::Float, ntol, ptol, 1e-9};
  }
  static ScalarConfig float_complex(double ntol = 1e-9, double ptol = 1e-9) {
    return {Field::Complex, Mode::Float, ntol, ptol, 1e-9};
  }
};

// Magnitude type: exact scalars have exact magnitudes.
template <class S>
struct magnitude_of;
template <>
struct magnitude_of<Rational> {
  using type = Rational;
};
template <>
struct magnitude_of<CD> {
  using type = double;
};
template <class S>
using mag_t = typename magnitude_of<S>::type;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

namespace num {

inline Rational mag(const Rational& s) { return s.abs(); }
inline double mag(const CD& s) { return std::abs(s); }

inline Rational conj(const Rational& s) { return s; }
inline CD conj(const CD& s) { return std::conj(s); }

inline bool is_zero(const Rational& s) { return s.is_zero(); }
inline bool is_zero(const CD& s) { return s.real() == 0.0 && s.imag() == 0.0; }

// Unit scalar in the direction of s; pre: s != 0.
inline Rational unit_phase(const Rational& s) { return Rational(s.sign()); }
inline CD unit_phase(const CD& s) { return s / std::abs(s); }

inline Rational from_int(long long v, const Rational*) { return Rational(v); }
inline CD from_int(long long v, const CD*) { return CD(static_cast<double>(v), 0.0); }
template <class S>
inline S from_int(long long v) {
  return from_int(v, static_cast<const S*>(nullptr));
}

inline Rational from_ratio(long long n, long long d, const Rational*) { return Rational(n, d); }
inline CD from_ratio(long long n, long long d, const CD*) {
  return CD(static_cast<double>(n) / static_cast<double>(d), 0.0);
}
template <class S>
inline S from_ratio(long long n, long long d) {
  return from_ratio(n, d, static_cast<const S*>(nullptr));
}

inline double to_double(const Rational& s) { return s.to_double(); }
inline double to_double(double s) { return s; }

// --- magnitude comparisons -------------------------------------------------

inline bool mag_eq(const Rational& a, const Rational& b, const ScalarConfig&) { return a == b; }
inline bool mag_eq(double a, double b, const ScalarConfig& cfg) {
  const double m = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= cfg.norm_tol * m;
}

// "a attains the level of b" where a <= b structurally (norming columns,
// max-modulus coordinates). Relative slack per the float norming rule.
inline bool attains(const Rational& a, const Rational& b, const ScalarConfig&) { return a == b; }
inline bool attains(double a, double b, const ScalarConfig& cfg) { return a >= (1.0 - cfg.norm_tol) * b; }

// Entry negligibility relative to a scale (the vector's max modulus).
inline bool negligible(const Rational& v, const Rational&, const ScalarConfig&) { return v.is_zero(); }
inline bool negligible(double v, double scale, const ScalarConfig& cfg) { return v <= cfg.norm_tol * scale; }

// --- unit-scalar (phase) comparisons ---------------------------------------

inline double angle_of(const Rational& s) { return s.sign() >= 0 ? 0.0 : 3.14159265358979323846; }
inline double angle_of(const CD& s) { return std::atan2(s.imag(), s.real()); }

inline bool phase_eq(const Rational& a, const Rational& b, const ScalarConfig&) { return a == b; }
inline bool phase_eq(const CD& a, const CD& b, const ScalarConfig& cfg) {
  const CD r = a * std::conj(b);
  return std::abs(std::atan2(r.imag(), r.real())) <= cfg.phase_tol;
}

inline bool phase_is_one(const Rational& a, const ScalarConfig&) { return a.is_one(); }
inline bool phase_is_one(const CD& a, const ScalarConfig& cfg) {
  return std::abs(std::atan2(a.imag(), a.real())) <= cfg.phase_tol;
}

// Canonical sort key for phase lists: real field ascending (-1 before +1),
// complex field by angle in [0, 2pi).
inline double phase_sort_key(const Rational& s, const ScalarConfig&) { return s.to_double(); }
inline double phase_sort_key(const CD& s, const ScalarConfig& cfg) {
  if (cfg.field == Field::Real) return s.real();
  double a = angle_of(s);
  if (a < 0) a += 2 * 3.14159265358979323846;
  return a;
}

}  // namespace num

}  // namespace parapres
