#include "gradstab/fpmod.hpp"

#include <algorithm>
#include <sstream>

namespace gradstab {

// ---------------------------------------------------------------------------
// AssSet

AssSet::AssSet(std::vector<PrimeIdealA> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool AssSet::contains(const PrimeIdealA& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool AssSet::subset_of(const AssSet& o) const {
  return std::all_of(primes_.begin(), primes_.end(),
                     [&](const PrimeIdealA& p) { return o.contains(p); });
}

AssSet AssSet::union_with(const AssSet& o) const {
  std::vector<PrimeIdealA> all = primes_;
  all.insert(all.end(), o.primes_.begin(), o.primes_.end());
  return AssSet(std::move(all));
}

std::string AssSet::render() const {
  std::string s = "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ", ";
    s += primes_[i].render();
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// FPModule

struct FPModule::Data {
  Mat pres;
  SnfResult snf;
  std::size_t free_rank;
  std::vector<RingElem> invariants;
  std::vector<std::pair<RingElem, int>> torsion;

  explicit Data(Mat p)
      : pres(std::move(p)), snf(smith_normal_form(pres)),
        free_rank(pres.rows() - snf.rank), invariants(snf.invariant_factors()) {
    if (pres.ring().kind() == RingKind::UnivariatePoly) {
      for (const auto& d : invariants) {
        for (const auto& t : factor(d).terms) torsion.emplace_back(t.prime, t.multiplicity);
      }
      std::sort(torsion.begin(), torsion.end(), [](const auto& a, const auto& b) {
        int c = RingElem::compare(a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
      });
    }
  }
};

FPModule::FPModule(Mat presentation) : d_(std::make_shared<Data>(std::move(presentation))) {}

FPModule FPModule::free(const BaseRing& ring, std::size_t rank) {
  return FPModule(Mat(ring, rank, 0));
}

FPModule FPModule::cyclic(const RingElem& g) {
  if (g.is_zero()) return free(g.ring(), 1);
  Mat m(g.ring(), 1, 1);
  m.set(0, 0, g);
  return FPModule(std::move(m));
}

FPModule FPModule::of_invariants(const BaseRing& ring, std::size_t rank,
                                 const std::vector<RingElem>& factors) {
  Mat m(ring, factors.size() + rank, factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) m.set(i, i, factors[i]);
  return FPModule(std::move(m));
}

const BaseRing& FPModule::ring() const { return d_->pres.ring(); }
std::size_t FPModule::gens() const { return d_->pres.rows(); }
const Mat& FPModule::presentation() const { return d_->pres; }
const SnfResult& FPModule::presentation_snf() const { return d_->snf; }
std::size_t FPModule::free_rank() const { return d_->free_rank; }
const std::vector<RingElem>& FPModule::invariant_factors() const { return d_->invariants; }

bool FPModule::is_zero() const { return d_->free_rank == 0 && d_->invariants.empty(); }

bool FPModule::isomorphic(const FPModule& o) const {
  return ring() == o.ring() && d_->free_rank == o.d_->free_rank &&
         d_->invariants == o.d_->invariants;
}

const std::vector<std::pair<RingElem, int>>& FPModule::torsion() const { return d_->torsion; }

AssSet FPModule::ass() const {
  std::vector<PrimeIdealA> primes;
  if (ring().is_field()) {
    if (!is_zero()) primes.push_back(PrimeIdealA::zero(ring()));
    return AssSet(std::move(primes));
  }
  if (d_->free_rank > 0) primes.push_back(PrimeIdealA::zero(ring()));
  for (const auto& [p, e] : d_->torsion) primes.push_back(PrimeIdealA::principal(p));
  return AssSet(std::move(primes));
}

Length FPModule::length() const {
  if (ring().is_field()) return Length::of(d_->free_rank);
  if (d_->free_rank > 0) return Length::infinite();
  std::uint64_t total = 0;
  for (const auto& [p, e] : d_->torsion) total += static_cast<std::uint64_t>(e);
  return Length::of(total);
}

Length FPModule::localized_length(const PrimeIdealA& p) const {
  if (p.is_zero()) return Length::of(d_->free_rank);
  if (d_->free_rank > 0) return Length::infinite();
  std::uint64_t total = 0;
  for (const auto& [q, e] : d_->torsion)
    if (q == p.generator()) total += static_cast<std::uint64_t>(e);
  return Length::of(total);
}

std::string FPModule::normal_form_string() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (d_->free_rank == 1) parts.push_back("A");
  else if (d_->free_rank > 1) parts.push_back("A^" + std::to_string(d_->free_rank));
  for (const auto& [p, e] : d_->torsion) {
    std::string base = p.render();
    bool composite = base.find(' ') != std::string::npos;
    std::string inner = composite ? "(" + base + ")" : base;
    if (e > 1) inner += "^" + std::to_string(e);
    parts.push_back("A/(" + inner + ")");
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ⊕ ";
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// FPMap

FPMap::FPMap(FPModule source, FPModule target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
  if (mat_.rows() != tgt_.gens() || mat_.cols() != src_.gens())
    throw InternalError("FPMap: matrix shape does not match generators");
  if (src_.ring() != tgt_.ring())
    throw InternalError("FPMap: source and target over different rings");
  if (!well_defined(src_, tgt_, mat_))
    throw InternalError("FPMap: not well-defined on presentations");
}

bool FPMap::well_defined(const FPModule& source, const FPModule& target, const Mat& matrix) {
  if (matrix.rows() != target.gens() || matrix.cols() != source.gens()) return false;
  if (source.presentation().cols() == 0) return true;
  Mat moved = matrix * source.presentation();
  return solve(target.presentation_snf(), moved).has_value();
}

FPMap FPMap::identity(const FPModule& m) {
  return FPMap(m, m, Mat::identity(m.ring(), m.gens()));
}

FPMap FPMap::zero(FPModule source, FPModule target) {
  Mat z(source.ring(), target.gens(), source.gens());
  return FPMap(std::move(source), std::move(target), std::move(z));
}

FPMap FPMap::compose_after(const FPMap& inner) const {
  if (!(inner.tgt_.gens() == src_.gens() &&
        inner.tgt_.presentation() == src_.presentation()))
    throw InternalError("FPMap composition: middle modules differ");
  return FPMap(inner.src_, tgt_, mat_ * inner.mat_);
}

bool FPMap::same_map_as(const FPMap& o) const {
  if (mat_.rows() != o.mat_.rows() || mat_.cols() != o.mat_.cols()) return false;
  Mat diff = mat_ - o.mat_;
  if (diff.is_zero()) return true;
  return solve(tgt_.presentation_snf(), diff).has_value();
}

bool FPMap::is_zero_map() const {
  if (mat_.is_zero()) return true;
  return solve(tgt_.presentation_snf(), mat_).has_value();
}

// ---------------------------------------------------------------------------
// constructions

DirectSum direct_sum(const std::vector<FPModule>& parts) {
  if (parts.empty()) throw InternalError("direct_sum of nothing needs a ring");
  const BaseRing& ring = parts[0].ring();
  std::size_t g = 0, c = 0;
  for (const auto& p : parts) {
    g += p.gens();
    c += p.presentation().cols();
  }
  Mat pres(ring, g, c);
  std::size_t go = 0, co = 0;
  std::vector<std::pair<std::size_t, std::size_t>> offsets;
  for (const auto& p : parts) {
    offsets.emplace_back(go, co);
    for (std::size_t i = 0; i < p.gens(); ++i)
      for (std::size_t j = 0; j < p.presentation().cols(); ++j)
        pres.set(go + i, co + j, p.presentation().at(i, j));
    go += p.gens();
    co += p.presentation().cols();
  }
  FPModule sum{std::move(pres)};
  DirectSum out{sum, {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Mat inj(ring, g, parts[k].gens());
    for (std::size_t i = 0; i < parts[k].gens(); ++i)
      inj.set(offsets[k].first + i, i, RingElem::one(ring));
    out.injections.emplace_back(parts[k], sum, inj);
    out.projections.emplace_back(sum, parts[k], inj.transpose());
  }
  return out;
}

FPMap direct_sum_map(const DirectSum& src, const DirectSum& tgt,
                     const std::vector<FPMap>& parts) {
  if (parts.size() != src.injections.size() || parts.size() != tgt.injections.size())
    throw InternalError("direct_sum_map: part count mismatch");
  const BaseRing& ring = src.module.ring();
  Mat m(ring, tgt.module.gens(), src.module.gens());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Mat block = tgt.injections[k].matrix() * parts[k].matrix() *
                src.projections[k].matrix();
    m = m + block;
  }
  return FPMap(src.module, tgt.module, m);
}

Subquotient subquotient(const FPModule& ambient, const Mat& top, const Mat& bottom) {
  if (top.rows() != ambient.gens() || bottom.rows() != ambient.gens())
    throw InternalError("subquotient: generator coordinates have wrong height");
  const Mat& pres = ambient.presentation();
  if (bottom.cols() > 0) {
    Mat span = Mat::hstack(top, pres);
    SnfResult s = smith_normal_form(span);
    if (!solve(s, bottom).has_value())
      throw ValidationError("subquotient: bottom generators not contained in the top span");
  }
  Mat combined = Mat::hstack(Mat::hstack(top, bottom), pres);
  Mat rel = kernel_basis(smith_normal_form(combined)).first_rows(top.cols());
  return Subquotient{FPModule(std::move(rel)), top, ambient};
}

std::optional<Mat> express_in(const Subquotient& sq, const Mat& elements) {
  Mat span = Mat::hstack(sq.top, sq.ambient.presentation());
  auto sol = solve(smith_normal_form(span), elements);
  if (!sol) return std::nullopt;
  return sol->first_rows(sq.top.cols());
}

KernelResult kernel(const FPMap& f) {
  const BaseRing& ring = f.source().ring();
  Mat combined = Mat::hstack(f.matrix(), f.target().presentation());
  Mat pullback = kernel_basis(smith_normal_form(combined)).first_rows(f.source().gens());
  FPModule ambient_free = FPModule::free(ring, f.source().gens());
  Subquotient sq = [&] {
    try {
      return subquotient(ambient_free, pullback, f.source().presentation());
    } catch (const ValidationError& e) {
      throw InternalError(std::string("kernel: presentation escaped the pullback: ") + e.what());
    }
  }();
  FPMap incl(sq.module, f.source(), pullback);
  return {sq.module, std::move(incl)};
}

CokernelResult cokernel(const FPMap& f) {
  FPModule mod{Mat::hstack(f.matrix(), f.target().presentation())};
  FPMap proj(f.target(), mod, Mat::identity(f.source().ring(), f.target().gens()));
  return {mod, std::move(proj)};
}

ImageResult image(const FPMap& f) {
  Mat empty(f.source().ring(), f.target().gens(), 0);
  Subquotient sq = subquotient(f.target(), f.matrix(), empty);
  FPMap incl(sq.module, f.target(), f.matrix());
  return {sq.module, std::move(incl)};
}

ImageResult submodule(const FPModule& m, const Mat& generators) {
  FPMap f(FPModule::free(m.ring(), generators.cols()), m, generators);
  return image(f);
}

PushoutResult pushout(const FPMap& f, const FPMap& g) {
  if (!(f.source().presentation() == g.source().presentation()))
    throw InternalError("pushout: maps must share their source");
  DirectSum ds = direct_sum({f.target(), g.target()});
  Mat stacked = Mat::vstack(f.matrix(), g.matrix().scaled(-RingElem::one(f.source().ring())));
  FPMap h(f.source(), ds.module, stacked);
  CokernelResult ck = cokernel(h);
  return {ck.module, ck.projection.compose_after(ds.injections[0]),
          ck.projection.compose_after(ds.injections[1])};
}

Minimized minimize(const FPModule& m) {
  const SnfResult& s = m.presentation_snf();
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < m.gens(); ++t) {
    bool unit_row = t < s.rank && s.d.at(t, t).is_unit();
    if (!unit_row) keep.push_back(t);
  }
  FPModule small = FPModule::of_invariants(m.ring(), m.free_rank(), m.invariant_factors());
  FPMap to(m, small, s.u.select_rows(keep));
  FPMap from(small, m, s.uinv.select_cols(keep));
  return {std::move(small), std::move(to), std::move(from)};
}

// ---------------------------------------------------------------------------
// hom / tensor / tor / ext

namespace {

Mat vec_column_major(const Mat& x) {
  Mat v(x.ring(), x.rows() * x.cols(), 1);
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r) v.set(c * x.rows() + r, 0, x.at(r, c));
  return v;
}

Mat unvec_column_major(const Mat& v, std::size_t col, std::size_t rows, std::size_t cols) {
  Mat x(v.ring(), rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) x.set(r, c, v.at(c * rows + r, col));
  return x;
}

void check_same_base(const FPModule& m, const FPModule& n, const char* op) {
  if (m.ring() != n.ring()) throw InternalError(std::string(op) + ": different base rings");
}

}  // namespace

HomResult hom(const FPModule& m, const FPModule& n) {
  check_same_base(m, n, "hom");
  const BaseRing& ring = m.ring();
  std::size_t gm = m.gens(), cm = m.presentation().cols();
  std::size_t gn = n.gens(), cn = n.presentation().cols();

  // {X : X * P has columns inside im Q} as columns of vec(X), then modulo
  // the maps that factor through Q.
  Mat phi = Mat::kron(m.presentation().transpose(), Mat::identity(ring, gn));
  Mat psi = Mat::kron(Mat::identity(ring, cm), n.presentation());
  Mat pullback =
      kernel_basis(smith_normal_form(Mat::hstack(phi, psi))).first_rows(gm * gn);
  Mat through_q = Mat::kron(Mat::identity(ring, gm), n.presentation());

  Subquotient sq = subquotient(FPModule::free(ring, gm * gn), pullback, through_q);
  auto gen_snf = std::make_shared<SnfResult>(smith_normal_form(pullback));
  return HomResult(sq.module, m, n, pullback, std::move(gen_snf));
}

Mat HomResult::realize_matrix(std::size_t j) const {
  return unvec_column_major(gen_vecs_, j, cod_.gens(), dom_.gens());
}

FPMap HomResult::realize(std::size_t j) const {
  return FPMap(dom_, cod_, realize_matrix(j));
}

std::optional<Mat> HomResult::express_matrix(const Mat& map_matrix) const {
  return solve(*gen_snf_, vec_column_major(map_matrix));
}

std::optional<Mat> HomResult::express(const FPMap& f) const {
  if (!(f.source().presentation() == dom_.presentation()) ||
      !(f.target().presentation() == cod_.presentation()))
    throw InternalError("HomResult::express: map has wrong domain or codomain");
  return express_matrix(f.matrix());
}

FPMap hom_map_covariant(const FPModule& u, const FPMap& g) {
  HomResult hm = hom(u, g.source());
  HomResult hn = hom(u, g.target());
  std::size_t km = hm.module().gens(), kn = hn.module().gens();
  Mat out(u.ring(), kn, km);
  for (std::size_t j = 0; j < km; ++j) {
    auto coords = hn.express_matrix(g.matrix() * hm.realize_matrix(j));
    if (!coords) throw InternalError("hom_map_covariant: image map not expressible");
    for (std::size_t i = 0; i < kn; ++i) out.set(i, j, coords->at(i, 0));
  }
  return FPMap(hm.module(), hn.module(), std::move(out));
}

FPMap hom_map_contravariant(const FPMap& f, const FPModule& m) {
  HomResult hu = hom(f.target(), m);
  HomResult hv = hom(f.source(), m);
  std::size_t ku = hu.module().gens(), kv = hv.module().gens();
  Mat out(m.ring(), kv, ku);
  for (std::size_t j = 0; j < ku; ++j) {
    auto coords = hv.express_matrix(hu.realize_matrix(j) * f.matrix());
    if (!coords) throw InternalError("hom_map_contravariant: image map not expressible");
    for (std::size_t i = 0; i < kv; ++i) out.set(i, j, coords->at(i, 0));
  }
  return FPMap(hu.module(), hv.module(), std::move(out));
}

FPModule tensor(const FPModule& m, const FPModule& n) {
  check_same_base(m, n, "tensor");
  const BaseRing& ring = m.ring();
  Mat rel = Mat::hstack(Mat::kron(m.presentation(), Mat::identity(ring, n.gens())),
                        Mat::kron(Mat::identity(ring, m.gens()), n.presentation()));
  return FPModule(std::move(rel));
}

FPMap tensor_map(const FPMap& f, const FPMap& g) {
  return FPMap(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
               Mat::kron(f.matrix(), g.matrix()));
}

Mat pruned_resolution(const FPModule& u) {
  const auto& inv = u.invariant_factors();
  std::size_t k = inv.size();
  Mat w(u.ring(), k + u.free_rank(), k);
  for (std::size_t i = 0; i < k; ++i) w.set(i, i, inv[i]);
  return w;
}

namespace {

struct ResolutionTensor {
  // W (x) id_M : M^k -> M^(k+r) for W = pruned_resolution(u)
  DirectSum src, tgt;
  FPMap map;
};

ResolutionTensor resolution_tensored(const FPModule& u, const FPModule& m) {
  Mat w = pruned_resolution(u);
  DirectSum src = direct_sum(std::vector<FPModule>(std::max<std::size_t>(w.cols(), 1), m));
  DirectSum tgt = direct_sum(std::vector<FPModule>(std::max<std::size_t>(w.rows(), 1), m));
  // degenerate shapes: build explicit zero-sized sums
  if (w.cols() == 0 || w.rows() == 0) {
    FPModule src_m = w.cols() == 0 ? FPModule::zero(m.ring()) : src.module;
    FPModule tgt_m = w.rows() == 0 ? FPModule::zero(m.ring()) : tgt.module;
    FPMap f = FPMap::zero(src_m, tgt_m);
    return {DirectSum{src_m, {}, {}}, DirectSum{tgt_m, {}, {}}, std::move(f)};
  }
  FPMap f(src.module, tgt.module, Mat::kron(w, Mat::identity(m.ring(), m.gens())));
  return {std::move(src), std::move(tgt), std::move(f)};
}

ResolutionTensor resolution_dual(const FPModule& u, const FPModule& m) {
  // Hom(W, id_M) : M^(k+r) -> M^k
  Mat wt = pruned_resolution(u).transpose();
  if (wt.cols() == 0 || wt.rows() == 0) {
    FPModule src_m = wt.cols() == 0 ? FPModule::zero(m.ring())
                                    : direct_sum(std::vector<FPModule>(wt.cols(), m)).module;
    FPModule tgt_m = wt.rows() == 0 ? FPModule::zero(m.ring())
                                    : direct_sum(std::vector<FPModule>(wt.rows(), m)).module;
    FPMap f = FPMap::zero(src_m, tgt_m);
    return {DirectSum{src_m, {}, {}}, DirectSum{tgt_m, {}, {}}, std::move(f)};
  }
  DirectSum src = direct_sum(std::vector<FPModule>(wt.cols(), m));
  DirectSum tgt = direct_sum(std::vector<FPModule>(wt.rows(), m));
  FPMap f(src.module, tgt.module, Mat::kron(wt, Mat::identity(m.ring(), m.gens())));
  return {std::move(src), std::move(tgt), std::move(f)};
}

}  // namespace

FPModule tor(int i, const FPModule& u, const FPModule& m) {
  if (i < 0) throw ValidationError("tor: negative index");
  if (i == 0) return tensor(u, m);
  if (i >= 2) return FPModule::zero(m.ring());
  return kernel(resolution_tensored(u, m).map).module;
}

FPMap tor_map(int i, const FPModule& u, const FPMap& g) {
  if (i < 0) throw ValidationError("tor_map: negative index");
  if (i == 0) return tensor_map(FPMap::identity(u), g);
  if (i >= 2)
    return FPMap::zero(FPModule::zero(g.source().ring()), FPModule::zero(g.source().ring()));
  KernelResult ka = kernel(resolution_tensored(u, g.source()).map);
  KernelResult kb = kernel(resolution_tensored(u, g.target()).map);
  std::size_t k = pruned_resolution(u).cols();
  Mat vert = k == 0 ? Mat(g.source().ring(), 0, 0)
                    : Mat::kron(Mat::identity(g.source().ring(), k), g.matrix());
  Mat moved = vert * ka.inclusion.matrix();
  Mat span = Mat::hstack(kb.inclusion.matrix(), kb.inclusion.target().presentation());
  auto coords = solve(smith_normal_form(span), moved);
  if (!coords) throw InternalError("tor_map: image escaped the kernel");
  return FPMap(ka.module, kb.module, coords->first_rows(kb.module.gens()));
}

FPModule ext(int i, const FPModule& u, const FPModule& m) {
  if (i < 0) throw ValidationError("ext: negative index");
  if (i == 0) return hom(u, m).module();
  if (i >= 2) return FPModule::zero(m.ring());
  return cokernel(resolution_dual(u, m).map).module;
}

FPMap ext_map(int i, const FPModule& u, const FPMap& g) {
  if (i < 0) throw ValidationError("ext_map: negative index");
  if (i == 0) return hom_map_covariant(u, g);
  if (i >= 2)
    return FPMap::zero(FPModule::zero(g.source().ring()), FPModule::zero(g.source().ring()));
  CokernelResult ca = cokernel(resolution_dual(u, g.source()).map);
  CokernelResult cb = cokernel(resolution_dual(u, g.target()).map);
  std::size_t k = pruned_resolution(u).cols();
  Mat vert = k == 0 ? Mat(g.source().ring(), 0, 0)
                    : Mat::kron(Mat::identity(g.source().ring(), k), g.matrix());
  return FPMap(ca.module, cb.module, std::move(vert));
}

FPModule quotient_module(const IdealA& j) {
  switch (j.form()) {
    case IdealA::Form::Zero: return FPModule::free(j.ring(), 1);
    case IdealA::Form::Unit: return FPModule::zero(j.ring());
    case IdealA::Form::Principal: return FPModule::cyclic(j.principal_generator());
  }
  throw InternalError("quotient_module: bad ideal form");
}

Grade grade(const IdealA& j, const FPModule& m) {
  FPModule aj = quotient_module(j);
  if (tensor(m, aj).is_zero()) return Grade::inf();
  if (!hom(aj, m).module().is_zero()) return Grade::of(0);
  return Grade::of(1);
}

Grade grade_by_ext_scan(const IdealA& j, const FPModule& m) {
  FPModule aj = quotient_module(j);
  if (!ext(0, aj, m).is_zero()) return Grade::of(0);
  if (!ext(1, aj, m).is_zero()) return Grade::of(1);
  if (!tensor(m, aj).is_zero())
    throw InternalError("grade_by_ext_scan: all Ext vanish but the tensor does not");
  return Grade::inf();
}

}  // namespace gradstab
