#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gradstab/errors.hpp"

namespace gradstab {

enum class RingKind { PrimeField, UnivariatePoly };

/// The coefficient ring A: either F_p or F_p[u] for a single-word prime p.
/// Values are immutable and cheap to copy.
class BaseRing {
public:
  static BaseRing prime_field(std::uint32_t p);
  static BaseRing univariate(std::uint32_t p, std::string variable);

  RingKind kind() const { return kind_; }
  std::uint32_t modulus() const { return p_; }
  const std::string& variable() const { return var_; }
  bool is_field() const { return kind_ == RingKind::PrimeField; }
  int krull_dim() const { return is_field() ? 0 : 1; }
  std::string describe() const;

  friend bool operator==(const BaseRing& a, const BaseRing& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.var_ == b.var_;
  }
  friend bool operator!=(const BaseRing& a, const BaseRing& b) { return !(a == b); }

private:
  BaseRing(RingKind kind, std::uint32_t p, std::string var)
      : kind_(kind), p_(p), var_(std::move(var)) {}

  RingKind kind_;
  std::uint32_t p_;
  std::string var_;
};

/// An element of the coefficient ring, stored as residues mod p in ascending
/// degree with no trailing zeros (empty = 0). Over F_p the degree is <= 0.
class RingElem {
public:
  static RingElem zero(const BaseRing& ring) { return RingElem(ring, {}); }
  static RingElem one(const BaseRing& ring);
  static RingElem constant(const BaseRing& ring, std::int64_t value);
  static RingElem variable(const BaseRing& ring);
  static RingElem from_coeffs(const BaseRing& ring, std::vector<std::int64_t> coeffs);
  static RingElem monomial(const BaseRing& ring, int degree, std::int64_t coeff);

  const BaseRing& ring() const { return ring_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  /// Units are the nonzero constants.
  bool is_unit() const { return c_.size() == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  /// Degree; -1 for the zero element.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t leading_coeff() const;
  std::uint32_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0u;
  }

  RingElem monic() const;

  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem operator-() const;

  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

  /// Canonical order: by degree, then by the coefficient sequence.
  static int compare(const RingElem& a, const RingElem& b);
  friend bool operator<(const RingElem& a, const RingElem& b) { return compare(a, b) < 0; }

  std::string render() const;
  static RingElem parse(const BaseRing& ring, std::string_view text);

private:
  RingElem(BaseRing ring, std::vector<std::uint32_t> c)
      : ring_(std::move(ring)), c_(std::move(c)) {}
  void normalize();

  BaseRing ring_;
  std::vector<std::uint32_t> c_;

  friend struct RingElemOps;
};

/// Division with remainder: a = q*b + r with deg r < deg b. b must be nonzero.
struct DivModResult {
  RingElem quotient;
  RingElem remainder;
};
DivModResult divmod(const RingElem& a, const RingElem& b);
/// Exact division; throws InternalError if the remainder is nonzero.
RingElem exact_div(const RingElem& a, const RingElem& b);
/// Monic gcd (gcd(0,0) = 0).
RingElem gcd(const RingElem& a, const RingElem& b);
/// Inverse of a unit.
RingElem unit_inverse(const RingElem& a);
RingElem pow_mod(const RingElem& base, std::uint64_t e, const RingElem& mod);
RingElem derivative(const RingElem& f);

/// Seed used by the randomized equal-degree splitting step. Output of factor()
/// is canonically sorted and therefore independent of the seed.
void set_factor_seed(std::uint64_t seed);
std::uint64_t factor_seed();

struct FactorTerm {
  RingElem prime;  // monic irreducible
  int multiplicity;
};
struct FactorResult {
  RingElem unit;  // leading coefficient as a constant
  std::vector<FactorTerm> terms;  // sorted by (degree, coefficient sequence)
};
/// Factor a nonzero univariate polynomial into monic irreducibles.
/// Distinct-degree then equal-degree splitting; throws ValidationError on
/// zero input or a prime-field ring.
FactorResult factor(const RingElem& f);

/// Deterministic irreducibility test (Rabin) for monic f of degree >= 1.
bool is_irreducible(const RingElem& f);

/// A prime ideal of A: (0), or (g) for a monic irreducible g.
class PrimeIdealA {
public:
  static PrimeIdealA zero(const BaseRing& ring) { return PrimeIdealA(ring, std::nullopt); }
  /// Verifies irreducibility of the generator.
  static PrimeIdealA principal(RingElem monic_irreducible);

  const BaseRing& ring() const { return ring_; }
  bool is_zero() const { return !gen_.has_value(); }
  const RingElem& generator() const;

  static int compare(const PrimeIdealA& a, const PrimeIdealA& b);
  friend bool operator==(const PrimeIdealA& a, const PrimeIdealA& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const PrimeIdealA& a, const PrimeIdealA& b) { return !(a == b); }
  friend bool operator<(const PrimeIdealA& a, const PrimeIdealA& b) {
    return compare(a, b) < 0;
  }

  std::string render() const;  // "(0)" or "(g)"

private:
  PrimeIdealA(BaseRing ring, std::optional<RingElem> gen)
      : ring_(std::move(ring)), gen_(std::move(gen)) {}
  BaseRing ring_;
  std::optional<RingElem> gen_;
};

/// A finitely generated ideal of A with its canonical normal form cached:
/// zero, unit, or principal with a monic generator (the gcd of the generators).
class IdealA {
public:
  enum class Form { Zero, Unit, Principal };

  explicit IdealA(std::vector<RingElem> generators);

  const BaseRing& ring() const { return gens_.front().ring(); }
  const std::vector<RingElem>& generators() const { return gens_; }
  Form form() const { return form_; }
  /// Monic nonunit generator; only valid for Form::Principal.
  const RingElem& principal_generator() const;

  std::string render() const;

private:
  std::vector<RingElem> gens_;
  Form form_;
  std::optional<RingElem> principal_;
};

}  // namespace gradstab
