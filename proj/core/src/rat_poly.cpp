#include "gradstab/rat_poly.hpp"

#include <sstream>

namespace gradstab {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == Rational(0)) c_.pop_back();
}

RatPoly RatPoly::constant(Rational c) { return RatPoly({c}); }

RatPoly RatPoly::falling_binomial(long long base, int k) {
  // (z - base)(z - base - 1)...(z - base - k + 1) / k!
  RatPoly p = constant(Rational(1));
  long long fact = 1;
  for (int i = 0; i < k; ++i) {
    p = p * RatPoly({Rational(-(base + i)), Rational(1)});
    fact *= (i + 1);
  }
  return p.scaled(Rational(1, fact));
}

Rational RatPoly::eval(long long z) const {
  Rational r(0);
  for (int i = degree(); i >= 0; --i) r = r * Rational(z) + c_[static_cast<std::size_t>(i)];
  return r;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::scaled(Rational c) const {
  std::vector<Rational> out = c_;
  for (auto& x : out) x *= c;
  return RatPoly(std::move(out));
}

namespace {

std::string rat_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

}  // namespace

std::string RatPoly::render(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[static_cast<std::size_t>(i)];
    if (c == Rational(0)) continue;
    if (!first) {
      os << (c > Rational(0) ? " + " : " - ");
      if (c < Rational(0)) c = -c;
    } else if (c < Rational(0)) {
      os << "-";
      c = -c;
    }
    first = false;
    bool unit_coeff = (c == Rational(1));
    if (i == 0) {
      os << rat_str(c);
    } else {
      if (!unit_coeff) {
        if (c.denominator() == 1) os << rat_str(c) << "*";
        else os << "(" << rat_str(c) << ")*";
      }
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace gradstab
