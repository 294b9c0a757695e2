#include "gradstab/asymptotics.hpp"

namespace gradstab {

std::vector<AssSet> ass_profile(const DegreewiseFamily& x, int lo, int hi) {
  if (lo > hi) throw ValidationError("ass_profile: empty range");
  std::vector<AssSet> out;
  for (int n = lo; n <= hi; ++n) out.push_back(x.component(n).ass());
  return out;
}

namespace {

template <typename T>
std::optional<int> detect_tail(const std::vector<T>& profile, int lo, int w) {
  if (profile.empty()) return std::nullopt;
  std::size_t idx0 = profile.size() - 1;
  while (idx0 > 0 && profile[idx0 - 1] == profile.back()) --idx0;
  int hi_index = static_cast<int>(profile.size()) - 1;
  if (hi_index - static_cast<int>(idx0) < w) return std::nullopt;
  return lo + static_cast<int>(idx0);
}

}  // namespace

std::optional<int> detect_stabilization(const std::vector<AssSet>& profile, int lo, int w) {
  if (w < 1) throw ValidationError("detect_stabilization: confirmation width must be >= 1");
  return detect_tail(profile, lo, w);
}

// ---------------------------------------------------------------------------
// Hilbert fitting

std::optional<HilbertFit> hilbert_fit(const std::vector<Length>& lengths, int lo, int holdout) {
  if (holdout < 1) throw ValidationError("hilbert_fit: holdout must be >= 1");
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (!lengths[i].finite)
      throw ValidationError("not finite length at degree " +
                            std::to_string(lo + static_cast<int>(i)));
  int n = static_cast<int>(lengths.size());
  int fit_len = n - holdout;
  if (fit_len < 2)
    throw WindowError("hilbert_fit: window leaves fewer than 2 points after the holdout");

  // difference table rows 0..fit_len-1 over the fitting window
  std::vector<std::vector<Rational>> diff;
  diff.emplace_back();
  for (int i = 0; i < fit_len; ++i)
    diff[0].emplace_back(static_cast<long long>(lengths[static_cast<std::size_t>(i)].value));
  for (int d = 1; d < fit_len; ++d) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i + 1 < diff[static_cast<std::size_t>(d - 1)].size(); ++i)
      row.push_back(diff[static_cast<std::size_t>(d - 1)][i + 1] -
                    diff[static_cast<std::size_t>(d - 1)][i]);
    diff.push_back(std::move(row));
  }

  for (int d = 0; d + 1 < fit_len; ++d) {
    const auto& row = diff[static_cast<std::size_t>(d)];
    std::size_t t = row.size() - 1;
    while (t > 0 && row[t - 1] == row.back()) --t;
    if (row.size() - t < 2) continue;  // constancy needs at least two witnesses

    // Newton forward-difference polynomial based at degree lo + t
    long long base = lo + static_cast<long long>(t);
    RatPoly p;
    for (int i = 0; i <= d; ++i)
      p = p + RatPoly::falling_binomial(base, i).scaled(diff[static_cast<std::size_t>(i)][t]);

    bool ok = true;
    for (int idx = static_cast<int>(t); idx < n && ok; ++idx)
      ok = (p.eval(lo + idx) ==
            Rational(static_cast<long long>(lengths[static_cast<std::size_t>(idx)].value)));
    if (ok)
      return HilbertFit{p, std::max(p.degree(), 0), lo + static_cast<int>(t)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// grade stabilization

GradeProfile grade_profile(const IdealA& j, const DegreewiseFamily& x, int lo, int hi, int w) {
  GradeProfile out;
  for (int n = lo; n <= hi; ++n) out.grades.push_back(grade(j, x.component(n)));
  out.c_j = detect_tail(out.grades, lo, w);
  if (out.c_j) out.stable_value = out.grades[static_cast<std::size_t>(*out.c_j - lo)];

  // second route: stabilization of the coherent-functor images from the proof
  FPModule aj = quotient_module(j);
  DegreewiseFamily tens = apply_family(CoherentFunctor::tensor_with(aj), x);
  DegreewiseFamily homf = apply_family(CoherentFunctor::hom_from(aj), x);
  DegreewiseFamily ext1 = apply_family(CoherentFunctor::ext(1, aj), x);

  auto route2 = [&](int n) -> Grade {
    if (!homf.component(n).is_zero()) return Grade::of(0);
    if (!ext1.component(n).is_zero()) return Grade::of(1);
    if (tens.component(n).is_zero()) return Grade::inf();
    throw InternalError("grade routes disagree: tensor nonzero while Ext^0 and Ext^1 vanish");
  };

  out.two_route_agreement = true;
  if (out.c_j) {
    for (int n = *out.c_j; n <= hi; ++n)
      if (route2(n) != out.grades[static_cast<std::size_t>(n - lo)]) {
        out.two_route_agreement = false;
        break;
      }
    // the stable value recomputed from the stabilized Ass sets of the images
    auto stab_of = [&](const DegreewiseFamily& f) {
      return detect_stabilization(ass_profile(f, lo, hi), lo, w);
    };
    auto sh = stab_of(homf), se = stab_of(ext1), st = stab_of(tens);
    if (sh && se && st) {
      Grade stable2 = !homf.component(hi).is_zero()  ? Grade::of(0)
                      : !ext1.component(hi).is_zero() ? Grade::of(1)
                                                      : Grade::inf();
      if (stable2 != out.stable_value) out.two_route_agreement = false;
    } else {
      out.two_route_agreement = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// quasi-finiteness

std::vector<QuasiFiniteRow> quasi_finite_check(const DegreewiseFamily& x, int lo, int hi,
                                               int k) {
  if (k < 1) throw ValidationError("quasi_finite_check: saturation bound must be >= 1");
  std::vector<QuasiFiniteRow> rows;
  for (int n = lo; n < hi; ++n) {
    QuasiFiniteRow row;
    row.degree = n;
    if (n + k <= x.hi()) {
      H0Result h = h0_component(x, n, k);
      row.h0_known = true;
      row.h0_zero = h.module.is_zero();
      row.h0_certified = h.certified;
    }
    // joint multiplication map X_n -> X_(n+1)^s
    std::vector<FPModule> copies(std::max<std::size_t>(x.num_vars(), 1), x.component(n + 1));
    DirectSum ds = direct_sum(copies);
    Mat stacked(x.ring().base(), 0, x.component(n).gens());
    for (std::size_t v = 0; v < x.num_vars(); ++v)
      stacked = Mat::vstack(stacked, x.mult(n, v).matrix());
    if (x.num_vars() == 0) stacked = Mat(x.ring().base(), ds.module.gens(), x.component(n).gens());
    FPMap joint(x.component(n), ds.module, std::move(stacked));
    row.joint_injective = kernel(joint).module.is_zero();
    row.ass_contained = x.component(n).ass().subset_of(x.component(n + 1).ass());
    if (row.joint_injective && !row.ass_contained)
      throw InternalError("quasi_finite_check: injective joint map but Ass containment fails "
                          "at degree " + std::to_string(n));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// aggregation

StabilityReport full_report(const DegreewiseFamily& x, const std::vector<IdealA>& ideals,
                            const AnalyzerOptions& options) {
  if (options.lo < x.lo() || options.hi > x.hi() || options.lo > options.hi)
    throw WindowError("analysis window [" + std::to_string(options.lo) + ", " +
                      std::to_string(options.hi) + "] not inside the family window");
  StabilityReport rep;
  rep.lo = options.lo;
  rep.hi = options.hi;
  rep.confirm = options.confirm;
  rep.sat = options.sat;
  rep.holdout = options.holdout;

  rep.ass = ass_profile(x, options.lo, options.hi);
  rep.n0 = detect_stabilization(rep.ass, options.lo, options.confirm);
  if (rep.n0) rep.stable_ass = rep.ass[static_cast<std::size_t>(*rep.n0 - options.lo)];

  // lengths, with the finite tail fitted when an infinite prefix occurs and
  // the free-rank profile substituted when lengths stay infinite
  HilbertSection& hs = rep.hilbert;
  for (int n = options.lo; n <= options.hi; ++n)
    hs.lengths.push_back(x.component(n).length());
  int size = static_cast<int>(hs.lengths.size());
  int f = size;
  while (f > 0 && hs.lengths[static_cast<std::size_t>(f - 1)].finite) --f;
  if (f == 0) {
    hs.on_lengths = true;
    hs.fit_lo = options.lo;
    for (const auto& l : hs.lengths) hs.fitted_values.push_back(l.value);
    hs.fit = hilbert_fit(hs.lengths, options.lo, options.holdout);
  } else if (size - f >= options.holdout + 2) {
    hs.on_lengths = true;
    hs.fit_lo = options.lo + f;
    hs.infinite_witness = options.lo + f - 1;
    std::vector<Length> tail(hs.lengths.begin() + f, hs.lengths.end());
    for (const auto& l : tail) hs.fitted_values.push_back(l.value);
    hs.fit = hilbert_fit(tail, hs.fit_lo, options.holdout);
  } else {
    hs.on_lengths = false;
    hs.fit_lo = options.lo;
    hs.infinite_witness = options.lo + f - 1;
    std::vector<Length> ranks;
    for (int n = options.lo; n <= options.hi; ++n) {
      ranks.push_back(Length::of(x.component(n).free_rank()));
      hs.fitted_values.push_back(x.component(n).free_rank());
    }
    hs.fit = hilbert_fit(ranks, options.lo, options.holdout);
  }

  for (const auto& j : ideals)
    rep.grades.push_back(
        {j, grade_profile(j, x, options.lo, options.hi, options.confirm)});

  rep.quasi_finite = quasi_finite_check(x, options.lo, options.hi, options.sat);

  bool certified = rep.n0.has_value() && rep.hilbert.fit.has_value();
  for (const auto& g : rep.grades)
    certified = certified && g.profile.c_j.has_value() && g.profile.two_route_agreement;
  for (const auto& row : rep.quasi_finite)
    if (row.h0_known) certified = certified && row.h0_certified;
  rep.certification = certified ? Certification::WindowCertified : Certification::Heuristic;
  return rep;
}

}  // namespace gradstab
