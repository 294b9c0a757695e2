#pragma once

#include <optional>

#include "gradstab/graded.hpp"

namespace gradstab {

enum class Provenance { FG, Quotient, Extension, FunctorImage, Derived };
std::string provenance_name(Provenance p);

/// A window [lo, hi] of components X_n of a graded module over R, with the
/// multiplication maps X_n -> X_(n+1) for each degree-1 generator of R.
/// Families are immutable; every constructor computes its window eagerly.
class DegreewiseFamily {
public:
  DegreewiseFamily(Provenance provenance, GradedRing ring, int lo, int hi, int zero_below,
                   std::vector<FPModule> components, std::vector<std::vector<FPMap>> mults);

  Provenance provenance() const { return provenance_; }
  const GradedRing& ring() const { return ring_; }
  std::size_t num_vars() const { return ring_.nvars(); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  /// All components vanish below this degree.
  int zero_below() const { return zero_below_; }

  /// Component X_n; degrees below zero_below are the zero module, degrees
  /// outside the constructed window otherwise raise WindowError.
  const FPModule& component(int n) const;
  /// Multiplication X_n -> X_(n+1) by ring variable var; n in [lo, hi-1].
  const FPMap& mult(int n, std::size_t var) const;
  /// Composite multiplication X_n -> X_(n+|e|) by the monomial e.
  FPMap mult_by_monomial(int n, const ExpVec& e) const;

private:
  Provenance provenance_;
  GradedRing ring_;
  int lo_, hi_, zero_below_;
  std::vector<FPModule> components_;
  std::vector<std::vector<FPMap>> mults_;
  FPModule zero_;
};

/// Class-0 family: a finitely generated graded module windowed on [lo, hi].
/// Components are stored in canonical minimized form.
DegreewiseFamily fg_family(const GradedModule& d, int lo, int hi);

/// Class-1 family X = N/M for an inclusion M -> N over a ring inclusion
/// R <= S. Injectivity of every component map in the window is verified;
/// failure reports the witness degree.
DegreewiseFamily quotient_family(const GradedMap& inclusion, int lo, int hi);

/// X/D for a degreewise inclusion j_n : D_n -> X_n of a finitely generated
/// graded module; j must commute with the multiplication maps.
DegreewiseFamily quotient_by_fg(const DegreewiseFamily& x, const DegreewiseFamily& d,
                                const std::vector<FPMap>& j);

/// Explicit degreewise witness of an extension 0 -> X -> Y -> D -> 0.
struct ExtensionData {
  std::vector<FPModule> middle;             // Y_n for n in [lo, hi]
  std::vector<FPMap> incl;                  // X_n -> Y_n
  std::vector<FPMap> proj;                  // Y_n -> D_n
  std::vector<std::vector<FPMap>> mults;    // Y_n -> Y_(n+1) per variable
};
DegreewiseFamily extend_family(const DegreewiseFamily& x, const DegreewiseFamily& d,
                               const ExtensionData& data);
/// Extension data for the split extension Y = X (+) D.
ExtensionData split_extension(const DegreewiseFamily& x, const DegreewiseFamily& d);

struct H0Result {
  FPModule module;   // submodule of X_n killed by R_+^K
  Mat generators;    // in X_n generator coordinates
  bool certified;    // kernel stabilized between K-1 and K
};
/// Degree-n part of the R_+-torsion submodule, computed with saturation
/// bound K >= 1: the kernel of X_n -> (+) X_(n+K) over all degree-K monomials.
H0Result h0_component(const DegreewiseFamily& x, int n, int k);

/// The submodule generated in degrees >= r, regraded so degree r becomes 0.
/// Relations are harvested degreewise and are complete up to degree_bound.
/// gen_origin, when given, receives for each new generator the original
/// generator index and the monomial multiplying it.
GradedModule truncate_and_shift(const GradedModule& x, int r, int degree_bound,
                                std::vector<std::pair<std::size_t, ExpVec>>* gen_origin = nullptr);

}  // namespace gradstab
