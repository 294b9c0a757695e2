#include "gradstab/family.hpp"

#include <algorithm>
#include <map>

namespace gradstab {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::FG: return "fg";
    case Provenance::Quotient: return "quotient";
    case Provenance::Extension: return "extension";
    case Provenance::FunctorImage: return "functor_image";
    case Provenance::Derived: return "derived";
  }
  return "?";
}

DegreewiseFamily::DegreewiseFamily(Provenance provenance, GradedRing ring, int lo, int hi,
                                   int zero_below, std::vector<FPModule> components,
                                   std::vector<std::vector<FPMap>> mults)
    : provenance_(provenance), ring_(std::move(ring)), lo_(lo), hi_(hi),
      zero_below_(zero_below), components_(std::move(components)), mults_(std::move(mults)),
      zero_(FPModule::zero(ring_.base())) {
  if (lo_ > hi_) throw ValidationError("family window is empty");
  if (components_.size() != static_cast<std::size_t>(hi_ - lo_ + 1))
    throw InternalError("family: component count does not match the window");
  if (mults_.size() != static_cast<std::size_t>(hi_ - lo_))
    throw InternalError("family: multiplication map count does not match the window");
  for (const auto& per_degree : mults_)
    if (per_degree.size() != ring_.nvars())
      throw InternalError("family: one multiplication map per ring variable required");
}

const FPModule& DegreewiseFamily::component(int n) const {
  if (n < zero_below_ && n < lo_) return zero_;
  if (n < lo_ || n > hi_)
    throw WindowError("degree " + std::to_string(n) + " outside the constructed window [" +
                      std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  return components_[static_cast<std::size_t>(n - lo_)];
}

const FPMap& DegreewiseFamily::mult(int n, std::size_t var) const {
  if (n < lo_ || n >= hi_)
    throw WindowError("multiplication map at degree " + std::to_string(n) +
                      " outside the constructed window");
  if (var >= ring_.nvars()) throw ValidationError("no such ring variable");
  return mults_[static_cast<std::size_t>(n - lo_)][var];
}

FPMap DegreewiseFamily::mult_by_monomial(int n, const ExpVec& e) const {
  FPMap acc = FPMap::identity(component(n));
  int cur = n;
  for (std::size_t v = 0; v < e.size(); ++v)
    for (int rep = 0; rep < e[v]; ++rep) {
      acc = mult(cur, v).compose_after(acc);
      ++cur;
    }
  return acc;
}

// ---------------------------------------------------------------------------
// construction helpers

namespace {

struct MinimizedWindow {
  std::vector<FPModule> comps;
  std::vector<std::vector<FPMap>> mults;
};

/// Minimize every component and conjugate the multiplication maps.
MinimizedWindow minimize_window(const std::vector<FPModule>& raw_comps,
                                const std::vector<std::vector<FPMap>>& raw_mults) {
  std::vector<Minimized> mins;
  mins.reserve(raw_comps.size());
  for (const auto& c : raw_comps) mins.push_back(minimize(c));
  MinimizedWindow out;
  for (const auto& m : mins) out.comps.push_back(m.module);
  for (std::size_t n = 0; n + 1 < raw_comps.size(); ++n) {
    std::vector<FPMap> per;
    for (const auto& raw : raw_mults[n]) {
      Mat conj = mins[n + 1].to.matrix() * raw.matrix() * mins[n].from.matrix();
      per.emplace_back(mins[n].module, mins[n + 1].module, std::move(conj));
    }
    out.mults.push_back(std::move(per));
  }
  return out;
}

/// Index of the S-variable that an R-variable maps to.
std::size_t injected_var(const RingInclusion& rings, std::size_t small_var) {
  ExpVec e(rings.small().nvars(), 0);
  e[small_var] = 1;
  ExpVec big = rings.inject(e);
  for (std::size_t i = 0; i < big.size(); ++i)
    if (big[i] == 1) return i;
  throw InternalError("ring inclusion lost a variable");
}

}  // namespace

DegreewiseFamily fg_family(const GradedModule& d, int lo, int hi) {
  if (lo > hi) throw ValidationError("fg_family: empty window");
  std::vector<FPModule> comps;
  std::vector<std::vector<FPMap>> mults;
  for (int n = lo; n <= hi; ++n) comps.push_back(d.component(n));
  for (int n = lo; n < hi; ++n) {
    std::vector<FPMap> per;
    for (std::size_t v = 0; v < d.ring().nvars(); ++v) per.push_back(d.mult_map(n, v));
    mults.push_back(std::move(per));
  }
  MinimizedWindow w = minimize_window(comps, mults);
  return DegreewiseFamily(Provenance::FG, d.ring(), lo, hi, d.min_gen_twist(),
                          std::move(w.comps), std::move(w.mults));
}

DegreewiseFamily quotient_family(const GradedMap& inclusion, int lo, int hi) {
  if (lo > hi) throw ValidationError("quotient_family: empty window");
  const RingInclusion& rings = inclusion.rings();
  const GradedModule& n_mod = inclusion.target();

  std::vector<FPModule> comps;
  std::vector<FPMap> projections;
  for (int n = lo; n <= hi; ++n) {
    FPMap in = inclusion.component(n);
    if (!kernel(in).module.is_zero())
      throw ValidationError("not an inclusion at degree " + std::to_string(n));
    CokernelResult ck = cokernel(in);
    comps.push_back(ck.module);
    projections.push_back(ck.projection);
  }
  std::vector<std::vector<FPMap>> mults;
  for (int n = lo; n < hi; ++n) {
    std::vector<FPMap> per;
    for (std::size_t v = 0; v < rings.small().nvars(); ++v) {
      FPMap big = n_mod.mult_map(n, injected_var(rings, v));
      per.emplace_back(comps[static_cast<std::size_t>(n - lo)],
                       comps[static_cast<std::size_t>(n - lo + 1)], big.matrix());
    }
    mults.push_back(std::move(per));
  }
  MinimizedWindow w = minimize_window(comps, mults);
  return DegreewiseFamily(Provenance::Quotient, rings.small(), lo, hi,
                          n_mod.min_gen_twist(), std::move(w.comps), std::move(w.mults));
}

DegreewiseFamily quotient_by_fg(const DegreewiseFamily& x, const DegreewiseFamily& d,
                                const std::vector<FPMap>& j) {
  if (!(x.ring() == d.ring()))
    throw ValidationError("quotient_by_fg: families over different rings");
  if (x.lo() != d.lo() || x.hi() != d.hi())
    throw ValidationError("quotient_by_fg: windows differ");
  if (j.size() != static_cast<std::size_t>(x.hi() - x.lo() + 1))
    throw ValidationError("quotient_by_fg: one inclusion per window degree required");

  for (int n = x.lo(); n <= x.hi(); ++n) {
    const FPMap& jn = j[static_cast<std::size_t>(n - x.lo())];
    if (!(jn.source().presentation() == d.component(n).presentation()) ||
        !(jn.target().presentation() == x.component(n).presentation()))
      throw ValidationError("quotient_by_fg: inclusion at degree " + std::to_string(n) +
                            " does not match the family components");
    if (!kernel(jn).module.is_zero())
      throw ValidationError("quotient_by_fg: map not injective at degree " + std::to_string(n));
  }
  for (int n = x.lo(); n < x.hi(); ++n) {
    for (std::size_t v = 0; v < x.num_vars(); ++v) {
      FPMap left = x.mult(n, v).compose_after(j[static_cast<std::size_t>(n - x.lo())]);
      FPMap right = j[static_cast<std::size_t>(n + 1 - x.lo())].compose_after(d.mult(n, v));
      if (!left.same_map_as(right))
        throw ValidationError("quotient_by_fg: inclusion incompatible with multiplication by " +
                              x.ring().vars()[v] + " at degree " + std::to_string(n));
    }
  }

  std::vector<FPModule> comps;
  for (int n = x.lo(); n <= x.hi(); ++n)
    comps.push_back(cokernel(j[static_cast<std::size_t>(n - x.lo())]).module);
  std::vector<std::vector<FPMap>> mults;
  for (int n = x.lo(); n < x.hi(); ++n) {
    std::vector<FPMap> per;
    for (std::size_t v = 0; v < x.num_vars(); ++v)
      per.emplace_back(comps[static_cast<std::size_t>(n - x.lo())],
                       comps[static_cast<std::size_t>(n + 1 - x.lo())],
                       x.mult(n, v).matrix());
    mults.push_back(std::move(per));
  }
  MinimizedWindow w = minimize_window(comps, mults);
  return DegreewiseFamily(Provenance::Derived, x.ring(), x.lo(), x.hi(), x.zero_below(),
                          std::move(w.comps), std::move(w.mults));
}

DegreewiseFamily extend_family(const DegreewiseFamily& x, const DegreewiseFamily& d,
                               const ExtensionData& data) {
  if (!(x.ring() == d.ring()))
    throw ValidationError("extend_family: families over different rings");
  if (x.lo() != d.lo() || x.hi() != d.hi())
    throw ValidationError("extend_family: windows differ");
  std::size_t len = static_cast<std::size_t>(x.hi() - x.lo() + 1);
  if (data.middle.size() != len || data.incl.size() != len || data.proj.size() != len ||
      data.mults.size() + 1 != len)
    throw ValidationError("extend_family: extension data does not cover the window");

  for (int n = x.lo(); n <= x.hi(); ++n) {
    std::size_t idx = static_cast<std::size_t>(n - x.lo());
    const FPMap& in = data.incl[idx];
    const FPMap& pr = data.proj[idx];
    std::string at = " at degree " + std::to_string(n);
    if (!pr.compose_after(in).is_zero_map())
      throw ValidationError("invalid extension data: proj o incl nonzero" + at);
    if (!kernel(in).module.is_zero())
      throw ValidationError("invalid extension data: inclusion not injective" + at);
    if (!cokernel(pr).module.is_zero())
      throw ValidationError("invalid extension data: projection not surjective" + at);
    KernelResult kp = kernel(pr);
    Subquotient homology = subquotient(
        FPModule::free(x.ring().base(), data.middle[idx].gens()),
        kp.inclusion.matrix(),
        Mat::hstack(in.matrix(), data.middle[idx].presentation()));
    if (!homology.module.is_zero())
      throw ValidationError("invalid extension data: not exact in the middle" + at);
  }
  for (int n = x.lo(); n < x.hi(); ++n) {
    std::size_t idx = static_cast<std::size_t>(n - x.lo());
    for (std::size_t v = 0; v < x.num_vars(); ++v) {
      const FPMap& ym = data.mults[idx][v];
      std::string at = " for variable " + x.ring().vars()[v] + " at degree " + std::to_string(n);
      if (!ym.compose_after(data.incl[idx]).same_map_as(
              data.incl[idx + 1].compose_after(x.mult(n, v))))
        throw ValidationError("invalid extension data: multiplication does not commute with the inclusion" + at);
      if (!data.proj[idx + 1].compose_after(ym).same_map_as(
              d.mult(n, v).compose_after(data.proj[idx])))
        throw ValidationError("invalid extension data: multiplication does not commute with the projection" + at);
    }
  }

  MinimizedWindow w = minimize_window(data.middle, data.mults);
  return DegreewiseFamily(Provenance::Extension, x.ring(), x.lo(), x.hi(),
                          std::min(x.zero_below(), d.zero_below()), std::move(w.comps),
                          std::move(w.mults));
}

ExtensionData split_extension(const DegreewiseFamily& x, const DegreewiseFamily& d) {
  if (x.lo() != d.lo() || x.hi() != d.hi())
    throw ValidationError("split_extension: windows differ");
  ExtensionData out;
  std::vector<DirectSum> sums;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    DirectSum ds = direct_sum({x.component(n), d.component(n)});
    out.middle.push_back(ds.module);
    out.incl.push_back(ds.injections[0]);
    out.proj.push_back(ds.projections[1]);
    sums.push_back(std::move(ds));
  }
  for (int n = x.lo(); n < x.hi(); ++n) {
    std::size_t idx = static_cast<std::size_t>(n - x.lo());
    std::vector<FPMap> per;
    for (std::size_t v = 0; v < x.num_vars(); ++v)
      per.push_back(direct_sum_map(sums[idx], sums[idx + 1], {x.mult(n, v), d.mult(n, v)}));
    out.mults.push_back(std::move(per));
  }
  return out;
}

// ---------------------------------------------------------------------------
// local cohomology in degree n

namespace {

/// Generators (in X_n coordinates) of the kernel of the joint degree-k
/// multiplication map X_n -> (+) X_(n+k).
Mat saturation_kernel_gens(const DegreewiseFamily& x, int n, int k) {
  const FPModule& xn = x.component(n);
  if (k == 0) {
    // kernel of the identity: the relations themselves
    Mat combined = Mat::hstack(Mat::identity(x.ring().base(), xn.gens()), xn.presentation());
    return kernel_basis(smith_normal_form(combined)).first_rows(xn.gens());
  }
  auto monos = x.ring().monomials(k);
  std::vector<FPModule> targets(monos.size(), x.component(n + k));
  DirectSum ds = direct_sum(targets);
  Mat stacked(x.ring().base(), 0, xn.gens());
  for (const auto& mu : monos)
    stacked = Mat::vstack(stacked, x.mult_by_monomial(n, mu).matrix());
  FPMap joint(xn, ds.module, std::move(stacked));
  return kernel(joint).inclusion.matrix();
}

}  // namespace

H0Result h0_component(const DegreewiseFamily& x, int n, int k) {
  if (k < 1) throw ValidationError("h0_component: saturation bound must be >= 1");
  if (n + k > x.hi())
    throw WindowError("h0_component at degree " + std::to_string(n) + " needs degree " +
                      std::to_string(n + k) + " beyond the window");
  const FPModule& xn = x.component(n);
  Mat gens_k = saturation_kernel_gens(x, n, k);
  Mat gens_km1 = saturation_kernel_gens(x, n, k - 1);
  FPModule ambient_free = FPModule::free(x.ring().base(), xn.gens());
  Subquotient sub = subquotient(ambient_free, gens_k, xn.presentation());
  Subquotient growth = subquotient(ambient_free, gens_k, gens_km1);
  return {sub.module, gens_k, growth.module.is_zero()};
}

// ---------------------------------------------------------------------------
// truncation

GradedModule truncate_and_shift(const GradedModule& x, int r, int degree_bound) {
  if (degree_bound < 0) throw ValidationError("truncate_and_shift: negative bound");
  const GradedRing& ring = x.ring();

  struct NewGen {
    std::size_t orig;
    ExpVec mono;
    int twist;  // absolute degree
  };
  std::vector<NewGen> gens;
  for (std::size_t i = 0; i < x.gen_twists().size(); ++i) {
    int a = x.gen_twists()[i];
    if (a >= r) {
      gens.push_back({i, ExpVec(ring.nvars(), 0), a});
    } else {
      for (const auto& mu : ring.monomials(r - a)) gens.push_back({i, mu, r});
    }
  }

  std::vector<int> rel_twists;
  std::vector<std::vector<MultiPoly>> entries(gens.size());

  for (int deg = r; deg <= r + degree_bound; ++deg) {
    // expansion of monomial multiples of the new generators inside X_deg
    auto basis = x.component_basis(deg);
    std::map<std::pair<std::size_t, ExpVec>, std::size_t> locate;
    for (std::size_t b = 0; b < basis.size(); ++b) locate[basis[b]] = b;

    std::vector<std::pair<std::size_t, ExpVec>> columns;  // (new gen, monomial)
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& nu : ring.monomials(deg - gens[g].twist)) columns.emplace_back(g, nu);

    Mat expand(ring.base(), basis.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& [g, nu] = columns[c];
      auto key = std::make_pair(gens[g].orig, exp_add(gens[g].mono, nu));
      auto it = locate.find(key);
      if (it == locate.end()) throw InternalError("truncate_and_shift: basis lookup failed");
      expand.set(it->second, c, RingElem::one(ring.base()));
    }

    Mat combined = Mat::hstack(expand, x.component(deg).presentation());
    Mat rels = kernel_basis(smith_normal_form(combined)).first_rows(columns.size());
    for (std::size_t c = 0; c < rels.cols(); ++c) {
      std::vector<MultiPoly> col(gens.size(), MultiPoly::zero(ring));
      bool nonzero = false;
      for (std::size_t rrow = 0; rrow < columns.size(); ++rrow) {
        const RingElem& coeff = rels.at(rrow, c);
        if (coeff.is_zero()) continue;
        nonzero = true;
        col[columns[rrow].first].add_term(columns[rrow].second, coeff);
      }
      if (!nonzero) continue;
      rel_twists.push_back(deg - r);
      for (std::size_t g = 0; g < gens.size(); ++g) entries[g].push_back(col[g]);
    }
  }

  std::vector<int> gen_twists;
  for (const auto& g : gens) gen_twists.push_back(g.twist - r);
  return GradedModule(ring, std::move(gen_twists), std::move(rel_twists), std::move(entries));
}

}  // namespace gradstab
