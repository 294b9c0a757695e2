#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace gradstab {

using Rational = boost::rational<long long>;

/// Polynomial with rational coefficients, ascending degree, used for Hilbert
/// polynomials. Exact arithmetic throughout.
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly constant(Rational c);
  /// binomial(z - base, k) as a polynomial in z
  static RatPoly falling_binomial(long long base, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)]
                                                       : Rational(0);
  }
  Rational eval(long long z) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly scaled(Rational c) const;
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  /// "n^2/2 + n/2 + 1" style, in the given variable.
  std::string render(const std::string& var = "n") const;

private:
  std::vector<Rational> c_;
};

}  // namespace gradstab
