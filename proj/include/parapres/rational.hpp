// Exact rational scalar for the ExactRational arithmetic mode.
//
// Values whose reduced numerator/denominator fit in int64 are kept inline and
// all arithmetic runs through __int128 intermediates; anything larger spills
// to an arbitrary-precision representation (boost::multiprecision) behind a
// shared pointer. The spill path is rare at desk scale but keeps results
// exact for arbitrary "p/q" inputs, e.g. during fraction-free elimination.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>

namespace parapres {

namespace detail {
struct BigRep;  // defined in rational.cpp
}

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : n_(n) {}              // NOLINT: implicit by design
  Rational(int n) : n_(n) {}                    // NOLINT
  Rational(long long num, long long den);       // den != 0, reduced on entry

  // Exact binary value of a finite double.
  static Rational from_double(double x);
  // Accepts "p", "-p", "p/q" with optional sign on p. Throws std::invalid_argument.
  static Rational parse(std::string_view s);

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 n = static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_;
      const __int128 d = static_cast<__int128>(a.d_) * b.d_;
      return make_reduced(n, d);
    }
    return add_big(a, b);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 n = static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_;
      const __int128 d = static_cast<__int128>(a.d_) * b.d_;
      return make_reduced(n, d);
    }
    return sub_big(a, b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 n = static_cast<__int128>(a.n_) * b.n_;
      const __int128 d = static_cast<__int128>(a.d_) * b.d_;
      return make_reduced(n, d);
    }
    return mul_big(a, b);
  }
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return compare_big(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 lhs = static_cast<__int128>(a.n_) * b.d_;
      const __int128 rhs = static_cast<__int128>(b.n_) * a.d_;
      return lhs <=> rhs;
    }
    const int c = compare_big(a, b);
    return c <=> 0;
  }

  int sign() const;
  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  Rational abs() const;
  Rational reciprocal() const;  // throws on zero

  bool is_integer() const;
  // True when the reduced value is held inline (always true unless it spilled).
  bool is_small() const { return !big_; }
  long long small_num() const { return n_; }
  long long small_den() const { return d_; }

  Rational numerator() const;    // as an integer-valued Rational
  Rational denominator() const;  // >= 1

  double to_double() const;
  std::string str() const;  // "p" or "p/q"

 private:
  static Rational make_reduced(__int128 n, __int128 d);
  static Rational from_big(const detail::BigRep& v);
  static Rational add_big(const Rational& a, const Rational& b);
  static Rational sub_big(const Rational& a, const Rational& b);
  static Rational mul_big(const Rational& a, const Rational& b);
  static Rational div_big(const Rational& a, const Rational& b);
  static int compare_big(const Rational& a, const Rational& b);
  detail::BigRep to_big() const;

  // Inline representation: n_/d_ reduced, d_ > 0. Ignored when big_ is set.
  long long n_ = 0;
  long long d_ = 1;
  std::shared_ptr<const detail::BigRep> big_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace parapres
