#include "parapres/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace parapres {

namespace mp = boost::multiprecision;

namespace detail {
struct BigRep {
  mp::cpp_rational q;
};
}  // namespace detail

namespace {

using detail::BigRep;

unsigned __int128 uabs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  constexpr auto kMax64 = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  while (b != 0) {
    if (a <= kMax64 && b <= kMax64)
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mp::cpp_int to_cpp_int(__int128 v) {
  return mp::cpp_int(v);
}

bool fits_int64(const mp::cpp_int& v) {
  static const mp::cpp_int lo(std::numeric_limits<long long>::min());
  static const mp::cpp_int hi(std::numeric_limits<long long>::max());
  return v >= lo && v <= hi;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  __int128 n = num;
  __int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  *this = make_reduced(n, d);
}

Rational Rational::make_reduced(__int128 n, __int128 d) {
  // pre: d > 0
  if (n == 0) return Rational();
  const unsigned __int128 g = gcd128(uabs128(n), static_cast<unsigned __int128>(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  Rational r;
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max() &&
      d <= std::numeric_limits<long long>::max()) {
    r.n_ = static_cast<long long>(n);
    r.d_ = static_cast<long long>(d);
    return r;
  }
  BigRep rep;
  rep.q = mp::cpp_rational(to_cpp_int(n), to_cpp_int(d));
  return from_big(rep);
}

Rational Rational::from_big(const detail::BigRep& v) {
  const mp::cpp_int num = mp::numerator(v.q);
  const mp::cpp_int den = mp::denominator(v.q);
  if (fits_int64(num) && fits_int64(den)) {
    Rational r;
    r.n_ = num.convert_to<long long>();
    r.d_ = den.convert_to<long long>();
    return r;
  }
  Rational r;
  r.big_ = std::make_shared<const BigRep>(v);
  return r;
}

detail::BigRep Rational::to_big() const {
  if (big_) return *big_;
  BigRep rep;
  rep.q = mp::cpp_rational(n_, d_);
  return rep;
}

Rational Rational::add_big(const Rational& a, const Rational& b) {
  BigRep rep;
  rep.q = a.to_big().q + b.to_big().q;
  return from_big(rep);
}

Rational Rational::sub_big(const Rational& a, const Rational& b) {
  BigRep rep;
  rep.q = a.to_big().q - b.to_big().q;
  return from_big(rep);
}

Rational Rational::mul_big(const Rational& a, const Rational& b) {
  BigRep rep;
  rep.q = a.to_big().q * b.to_big().q;
  return from_big(rep);
}

Rational Rational::div_big(const Rational& a, const Rational& b) {
  BigRep rep;
  rep.q = a.to_big().q / b.to_big().q;
  return from_big(rep);
}

int Rational::compare_big(const Rational& a, const Rational& b) {
  const mp::cpp_rational lhs = a.to_big().q;
  const mp::cpp_rational rhs = b.to_big().q;
  return lhs.compare(rhs);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!a.big_ && !b.big_) {
    __int128 n = static_cast<__int128>(a.n_) * b.d_;
    __int128 d = static_cast<__int128>(a.d_) * b.n_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rational::make_reduced(n, d);
  }
  return Rational::div_big(a, b);
}

Rational Rational::operator-() const {
  if (!big_) {
    if (n_ == std::numeric_limits<long long>::min()) return make_reduced(-static_cast<__int128>(n_), d_);
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  BigRep rep;
  rep.q = -big_->q;
  return from_big(rep);
}

int Rational::sign() const {
  if (!big_) return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0);
  return big_->q.sign();
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
  return Rational(1) / *this;
}

bool Rational::is_integer() const {
  if (!big_) return d_ == 1;
  return mp::denominator(big_->q) == 1;
}

Rational Rational::numerator() const {
  if (!big_) return Rational(n_);
  BigRep rep;
  rep.q = mp::cpp_rational(mp::numerator(big_->q));
  return from_big(rep);
}

Rational Rational::denominator() const {
  if (!big_) return Rational(d_);
  BigRep rep;
  rep.q = mp::cpp_rational(mp::denominator(big_->q));
  return from_big(rep);
}

double Rational::to_double() const {
  if (!big_) return static_cast<double>(n_) / static_cast<double>(d_);
  return big_->q.convert_to<double>();
}

std::string Rational::str() const {
  if (!big_) {
    std::string s = std::to_string(n_);
    if (d_ != 1) s += "/" + std::to_string(d_);
    return s;
  }
  const mp::cpp_int num = mp::numerator(big_->q);
  const mp::cpp_int den = mp::denominator(big_->q);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Rational::from_double: non-finite value");
  if (x == 0.0) return Rational();
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // mant in [0.5, 1); 53 mantissa bits make mant*2^53 integral.
  auto mant_i = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  while (mant_i != 0 && (mant_i & 1) == 0) {
    mant_i >>= 1;
    ++exp;
  }
  if (exp >= 0) {
    if (exp <= 10) return Rational(mant_i << exp);
    BigRep rep;
    rep.q = mp::cpp_rational(mp::cpp_int(mant_i) << exp);
    return from_big(rep);
  }
  if (-exp <= 62) return Rational(mant_i, 1LL << -exp);
  BigRep rep;
  rep.q = mp::cpp_rational(mp::cpp_int(mant_i), mp::cpp_int(1) << -exp);
  return from_big(rep);
}

Rational Rational::parse(std::string_view s) {
  const auto bad = [&] { throw std::invalid_argument("Rational::parse: invalid literal '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  const auto slash = s.find('/');
  const std::string_view num_part = s.substr(0, slash);
  const std::string_view den_part = slash == std::string_view::npos ? std::string_view() : s.substr(slash + 1);
  const auto check_int = [&](std::string_view t) {
    if (t.empty()) bad();
    size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) bad();
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') bad();
  };
  check_int(num_part);
  const auto strip_plus = [](std::string_view t) { return t[0] == '+' ? t.substr(1) : t; };
  try {
    BigRep rep;
    if (slash == std::string_view::npos) {
      rep.q = mp::cpp_rational(mp::cpp_int(std::string(strip_plus(num_part))));
    } else {
      check_int(den_part);
      const mp::cpp_int den{std::string(strip_plus(den_part))};
      if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator");
      rep.q = mp::cpp_rational(mp::cpp_int(std::string(num_part)), den);
    }
    return from_big(rep);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

}  // namespace parapres
