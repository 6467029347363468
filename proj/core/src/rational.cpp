#include "respo/rational.hpp"

#include "respo/errors.hpp"

namespace respo {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) fail(ErrorKind::division_by_zero, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator+(const Rational& other) const {
  return Rational(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

Rational Rational::operator-(const Rational& other) const {
  return Rational(num_ * other.den_ - other.num_ * den_, den_ * other.den_);
}

Rational Rational::operator*(const Rational& other) const {
  return Rational(num_ * other.num_, den_ * other.den_);
}

Rational Rational::operator/(const Rational& other) const {
  if (other.num_ == 0) fail(ErrorKind::division_by_zero, "rational division by zero");
  return Rational(num_ * other.den_, den_ * other.num_);
}

Rational& Rational::operator+=(const Rational& other) {
  *this = *this + other;
  return *this;
}

bool Rational::operator<(const Rational& other) const {
  return num_ * other.den_ < other.num_ * den_;
}

bool Rational::operator<=(const Rational& other) const {
  return num_ * other.den_ <= other.num_ * den_;
}

std::string Rational::to_string() const {
  std::string out = num_.str();
  if (den_ != 1) out += "/" + den_.str();
  return out;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&]() -> Rational {
    fail(ErrorKind::format, "cannot parse rational '" + text + "'");
  };
  if (text.empty()) return bad();
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) return bad();
    return Rational(BigInt(p), BigInt(q));
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+')
      return bad();
    BigInt den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = BigInt(whole) * den;
    BigInt f(frac);
    num += (text[0] == '-') ? -f : f;
    return Rational(num, den);
  }
  if (!is_int(text)) return bad();
  return Rational(BigInt(text), 1);
}

BigInt Rational::factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace respo
