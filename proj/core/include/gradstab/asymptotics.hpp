#pragma once

#include "gradstab/family.hpp"
#include "gradstab/functors.hpp"
#include "gradstab/rat_poly.hpp"

namespace gradstab {

struct AnalyzerOptions {
  int lo = 0;
  int hi = 20;
  int confirm = 4;   // W: required distance from a detected index to the window end
  int sat = 4;       // K: saturation bound for H^0
  int holdout = 4;   // points excluded from Hilbert fitting and predicted exactly
  std::uint64_t seed = 0x5eed0001u;
};

std::vector<AssSet> ass_profile(const DegreewiseFamily& x, int lo, int hi);

/// Smallest n0 whose Ass set persists to the window end with hi - n0 >= W.
std::optional<int> detect_stabilization(const std::vector<AssSet>& profile, int lo, int w);

struct HilbertFit {
  RatPoly poly;
  int degree = 0;      // polynomial degree (0 for the zero polynomial)
  int valid_from = 0;  // first window degree the polynomial matches
};

/// Exact finite-difference fit of the least-degree polynomial matching a tail
/// of the (finite) length sequence. The last `holdout` points are excluded
/// from fitting and must be predicted exactly. Throws ValidationError on an
/// infinite length (with the witness degree) and WindowError when fewer than
/// holdout + 2 points are supplied.
std::optional<HilbertFit> hilbert_fit(const std::vector<Length>& lengths, int lo, int holdout);

struct GradeProfile {
  std::vector<Grade> grades;      // per degree in [lo, hi]
  std::optional<int> c_j;         // stabilization degree
  Grade stable_value;             // value at c_j when detected
  bool two_route_agreement = true;  // functor-stabilization route matches everywhere >= c_j
};

/// Degreewise grade(J, X_n) with stabilization detection; the stable value is
/// recomputed through Ass stabilization of the families X (x) A/J, Hom(A/J, X)
/// and Ext^1(A/J, X) and compared pointwise from c_j on.
GradeProfile grade_profile(const IdealA& j, const DegreewiseFamily& x, int lo, int hi, int w);

struct QuasiFiniteRow {
  int degree = 0;
  bool h0_known = false;      // degree + K inside the window
  bool h0_zero = false;
  bool h0_certified = false;
  bool joint_injective = false;  // X_n -> X_(n+1)^s
  bool ass_contained = false;    // Ass X_n inside Ass X_(n+1)
};

/// Per-degree quasi-finiteness mechanics on [lo, hi-1]. A degree where the
/// joint map is injective but the Ass containment fails raises InternalError.
std::vector<QuasiFiniteRow> quasi_finite_check(const DegreewiseFamily& x, int lo, int hi,
                                               int k);

enum class Certification { WindowCertified, Heuristic };

struct HilbertSection {
  bool on_lengths = true;          // false: free-rank profile substituted
  std::vector<Length> lengths;     // per degree in [lo, hi]
  std::vector<std::uint64_t> fitted_values;  // the sequence handed to the fitter
  int fit_lo = 0;                  // first degree of the fitted subwindow
  std::optional<int> infinite_witness;  // a degree with infinite length, if any
  std::optional<HilbertFit> fit;
};

struct GradeSection {
  IdealA ideal;
  GradeProfile profile;
};

struct StabilityReport {
  int lo = 0, hi = 0;
  int confirm = 0, sat = 0, holdout = 0;
  std::vector<AssSet> ass;
  std::optional<int> n0;
  AssSet stable_ass;
  HilbertSection hilbert;
  std::vector<GradeSection> grades;
  std::vector<QuasiFiniteRow> quasi_finite;
  Certification certification = Certification::Heuristic;
};

/// Run every analysis on the family and aggregate; WindowCertified only when
/// each sub-result carries its stabilization certificate.
StabilityReport full_report(const DegreewiseFamily& x, const std::vector<IdealA>& ideals,
                            const AnalyzerOptions& options);

}  // namespace gradstab
