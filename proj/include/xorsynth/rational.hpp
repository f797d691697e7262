#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace xorsynth {

/*! \brief Exact rational number with 64-bit numerator and denominator.
 *
 * Always kept in lowest terms with a positive denominator.  Covers the
 * value ranges produced by the bound calculators and the oracle ratio;
 * no overflow handling beyond what those need.
 */
class rational {
public:
  rational() = default;
  rational(std::int64_t numerator, std::int64_t denominator = 1)
      : num_(numerator), den_(denominator) {
    if (den_ == 0) {
      throw std::invalid_argument("rational: zero denominator");
    }
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  rational& operator+=(const rational& other) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
    normalize();
    return *this;
  }

  friend rational operator+(rational a, const rational& b) { return a += b; }

  friend bool operator==(const rational& a, const rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator<(const rational& a, const rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const rational& a, const rational& b) {
    return a == b || a < b;
  }
  friend bool operator>(const rational& a, const rational& b) { return b < a; }
  friend bool operator>=(const rational& a, const rational& b) { return b <= a; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Renders as "p/q", or just "p" when the denominator is 1.
  std::string to_string() const {
    if (den_ == 1) {
      return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) {
      den_ = 1;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace xorsynth
