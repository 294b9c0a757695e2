#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gradstab/fpmod.hpp"

namespace gradstab {

/// Exponent vector, one entry per ring variable.
using ExpVec = std::vector<int>;

int exp_total(const ExpVec& e);
bool exp_divides(const ExpVec& a, const ExpVec& b);  // a | b componentwise
ExpVec exp_add(const ExpVec& a, const ExpVec& b);
ExpVec exp_sub(const ExpVec& a, const ExpVec& b);

/// Standard graded polynomial extension A[x_1..x_m], all variables of degree 1.
class GradedRing {
public:
  GradedRing(BaseRing base, std::vector<std::string> variables);

  const BaseRing& base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  /// Monomials of the given total degree, lexicographically ascending as
  /// exponent sequences; empty below degree 0, {1} at degree 0.
  std::vector<ExpVec> monomials(int degree) const;
  static std::size_t monomial_count(int degree, std::size_t nvars);

  std::string describe() const;
  friend bool operator==(const GradedRing& a, const GradedRing& b) {
    return a.base_ == b.base_ && a.vars_ == b.vars_;
  }
  friend bool operator!=(const GradedRing& a, const GradedRing& b) { return !(a == b); }

private:
  BaseRing base_;
  std::vector<std::string> vars_;
};

/// Degree-preserving inclusion R into S mapping each R-variable to the
/// S-variable of the same name.
class RingInclusion {
public:
  static RingInclusion identify(GradedRing small, GradedRing big);

  const GradedRing& small() const { return small_; }
  const GradedRing& big() const { return big_; }
  ExpVec inject(const ExpVec& small_exp) const;

private:
  RingInclusion(GradedRing s, GradedRing b, std::vector<std::size_t> map)
      : small_(std::move(s)), big_(std::move(b)), var_map_(std::move(map)) {}
  GradedRing small_, big_;
  std::vector<std::size_t> var_map_;
};

/// Polynomial in the graded ring variables with coefficients in A.
class MultiPoly {
public:
  MultiPoly(BaseRing base, std::size_t nvars)
      : base_(std::move(base)), nvars_(nvars) {}
  static MultiPoly zero(const GradedRing& r) { return MultiPoly(r.base(), r.nvars()); }
  static MultiPoly monomial(const BaseRing& base, ExpVec e, RingElem coeff);

  const BaseRing& base() const { return base_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<ExpVec, RingElem>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Homogeneous of a single total degree (the zero polynomial passes).
  bool is_homogeneous() const;
  int degree_or(int fallback) const;  // total degree of a homogeneous polynomial

  void add_term(const ExpVec& e, const RingElem& c);
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Reinterpret over a bigger variable list through an inclusion.
  MultiPoly injected(const RingInclusion& incl) const;

  std::string render(const std::vector<std::string>& vars) const;
  static MultiPoly parse(const GradedRing& ring, std::string_view text);

private:
  BaseRing base_;
  std::size_t nvars_;
  std::map<ExpVec, RingElem> terms_;
};

std::string render_monomial(const ExpVec& e, const std::vector<std::string>& vars);

/// A finitely presented graded module over a graded polynomial ring:
/// cokernel of (+)_j S(-b_j) -> (+)_i S(-a_i) with homogeneous entries,
/// entry (i, j) of degree b_j - a_i.
class GradedModule {
public:
  GradedModule(GradedRing ring, std::vector<int> gen_twists, std::vector<int> rel_twists,
               std::vector<std::vector<MultiPoly>> entries);
  static GradedModule free(GradedRing ring, std::vector<int> gen_twists);

  const GradedRing& ring() const { return ring_; }
  const std::vector<int>& gen_twists() const { return gen_twists_; }
  const std::vector<int>& rel_twists() const { return rel_twists_; }
  const MultiPoly& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  int min_gen_twist() const;  // components vanish below this

  /// Labels of the degree-n component basis: (generator index, monomial).
  std::vector<std::pair<std::size_t, ExpVec>> component_basis(int n) const;
  /// The degree-n component as a finitely presented A-module.
  FPModule component(int n) const;
  /// Multiplication by the degree-1 variable `var`: component(n) -> component(n+1).
  FPMap mult_map(int n, std::size_t var) const;

private:
  GradedRing ring_;
  std::vector<int> gen_twists_, rel_twists_;
  std::vector<std::vector<MultiPoly>> entries_;
};

/// A degree-0 homogeneous map M -> N of graded modules, where M lives over the
/// small ring of an inclusion and N over the big ring. Entries are polynomials
/// over the big ring; entry (k, i) has degree gen_twist_M[i] - gen_twist_N[k].
class GradedMap {
public:
  GradedMap(GradedModule source, GradedModule target, RingInclusion rings,
            std::vector<std::vector<MultiPoly>> entries);

  const GradedModule& source() const { return src_; }
  const GradedModule& target() const { return tgt_; }
  const RingInclusion& rings() const { return rings_; }
  const MultiPoly& entry(std::size_t k, std::size_t i) const { return entries_[k][i]; }

  /// The induced A-linear map on degree-n components. Throws ValidationError
  /// when the map is not well-defined on the presentations at this degree.
  FPMap component(int n) const;

private:
  GradedModule src_, tgt_;
  RingInclusion rings_;
  std::vector<std::vector<MultiPoly>> entries_;
};

}  // namespace gradstab
