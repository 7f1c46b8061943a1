#include "srct/rational.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include "srct/error.hpp"

namespace srct {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void Rational::normalize() {
  if (den_ == 0) throw DivisionByZero("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return {BigInt(text), BigInt(1)};
    return {BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1))};
  } catch (const std::runtime_error&) {
    throw MalformedDocument("not a rational: " + text);
  }
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  if (den_ == o.den_) return {num_ + o.num_, den_};
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

Rational Rational::operator-(const Rational& o) const {
  if (den_ == o.den_) return {num_ - o.num_, den_};
  return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}

Rational Rational::operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DivisionByZero("rational division by zero");
  return {num_ * o.den_, den_ * o.num_};
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  BigInt l = num_ * o.den_;
  BigInt r = o.num_ * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

Rational frac(long long a, long long b) { return {BigInt(a), BigInt(b)}; }

long long ceil_div_int(long long a, long long b) {
  if (b <= 0) throw InvalidParams("ceil_div_int needs a positive divisor");
  long long q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

Rational binom(long long n, long long r) {
  if (r < 0 || n < 0 || r > n) return Rational(0);
  BigInt acc = 1;
  for (long long i = 1; i <= r; ++i) {
    acc *= (n - r + i);
    acc /= i;
  }
  return {acc, BigInt(1)};
}

}  // namespace srct
