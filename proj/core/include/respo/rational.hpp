#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace respo {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always kept reduced with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit on purpose
  Rational(BigInt numerator, BigInt denominator);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational& operator+=(const Rational& other);

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Rational& other) const { return !(*this == other); }
  bool operator<(const Rational& other) const;
  bool operator<=(const Rational& other) const;
  bool operator>(const Rational& other) const { return other < *this; }
  bool operator>=(const Rational& other) const { return other <= *this; }

  // "2/3"; integers render without the denominator.
  std::string to_string() const;
  double to_double() const;

  // Accepts "p", "p/q" and plain decimals like "0.25"; exact in all cases.
  static Rational parse(const std::string& text);

  static BigInt factorial(unsigned n);

 private:
  BigInt num_;
  BigInt den_;
};

}  // namespace respo
