#include "gradstab/functors.hpp"

namespace gradstab {

CoherentFunctor CoherentFunctor::presentation(FPMap f) {
  return CoherentFunctor(Kind::Presentation, 0, std::nullopt, std::move(f));
}
CoherentFunctor CoherentFunctor::hom_from(FPModule u) {
  return CoherentFunctor(Kind::HomFrom, 0, std::move(u), std::nullopt);
}
CoherentFunctor CoherentFunctor::tensor_with(FPModule u) {
  return CoherentFunctor(Kind::TensorWith, 0, std::move(u), std::nullopt);
}
CoherentFunctor CoherentFunctor::tor(int i, FPModule u) {
  if (i < 0) throw ValidationError("Tor index must be nonnegative");
  return CoherentFunctor(Kind::Tor, i, std::move(u), std::nullopt);
}
CoherentFunctor CoherentFunctor::ext(int i, FPModule u) {
  if (i < 0) throw ValidationError("Ext index must be nonnegative");
  return CoherentFunctor(Kind::Ext, i, std::move(u), std::nullopt);
}

const FPModule& CoherentFunctor::argument() const {
  if (!u_) throw InternalError("presentation functor has no module argument");
  return *u_;
}

const FPMap& CoherentFunctor::presenting_map() const {
  if (!f_) throw InternalError("built-in functor has no presenting map");
  return *f_;
}

std::string CoherentFunctor::describe() const {
  switch (kind_) {
    case Kind::Presentation: return "presentation";
    case Kind::HomFrom: return "hom(" + argument().normal_form_string() + ", -)";
    case Kind::TensorWith: return "- tensor " + argument().normal_form_string();
    case Kind::Tor:
      return "Tor_" + std::to_string(index_) + "(" + argument().normal_form_string() + ", -)";
    case Kind::Ext:
      return "Ext^" + std::to_string(index_) + "(" + argument().normal_form_string() + ", -)";
  }
  return "?";
}

FPModule apply(const CoherentFunctor& f, const FPModule& m) {
  switch (f.kind()) {
    case CoherentFunctor::Kind::Presentation:
      return cokernel(hom_map_contravariant(f.presenting_map(), m)).module;
    case CoherentFunctor::Kind::HomFrom:
      return hom(f.argument(), m).module();
    case CoherentFunctor::Kind::TensorWith:
      return tensor(f.argument(), m);
    case CoherentFunctor::Kind::Tor:
      return tor(f.index(), f.argument(), m);
    case CoherentFunctor::Kind::Ext:
      return ext(f.index(), f.argument(), m);
  }
  throw InternalError("apply: bad functor kind");
}

namespace {

/// Induced map on the presentation-functor values, from the naturality square
/// for g : M -> N. Values are cokernels of Hom(U,-) -> Hom(V,-), so the map
/// is Hom(V, g) written on cokernel generators.
FPMap presentation_apply_map(const FPMap& f, const FPMap& g) {
  const FPModule& v = f.source();
  FPMap theta_m = hom_map_contravariant(f, g.source());
  FPMap theta_n = hom_map_contravariant(f, g.target());
  CokernelResult cm = cokernel(theta_m);
  CokernelResult cn = cokernel(theta_n);
  FPMap hv_g = hom_map_covariant(v, g);  // Hom(V, M) -> Hom(V, N)
  return FPMap(cm.module, cn.module, hv_g.matrix());
}

}  // namespace

FPMap apply_map(const CoherentFunctor& f, const FPMap& g) {
  switch (f.kind()) {
    case CoherentFunctor::Kind::Presentation:
      return presentation_apply_map(f.presenting_map(), g);
    case CoherentFunctor::Kind::HomFrom:
      return hom_map_covariant(f.argument(), g);
    case CoherentFunctor::Kind::TensorWith:
      return tensor_map(FPMap::identity(f.argument()), g);
    case CoherentFunctor::Kind::Tor:
      return tor_map(f.index(), f.argument(), g);
    case CoherentFunctor::Kind::Ext:
      return ext_map(f.index(), f.argument(), g);
  }
  throw InternalError("apply_map: bad functor kind");
}

DegreewiseFamily apply_family(const CoherentFunctor& f, const DegreewiseFamily& x) {
  std::vector<FPModule> comps;
  std::vector<std::vector<FPMap>> mults;
  for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(apply(f, x.component(n)));
  for (int n = x.lo(); n < x.hi(); ++n) {
    std::vector<FPMap> per;
    for (std::size_t v = 0; v < x.num_vars(); ++v) {
      FPMap fm = apply_map(f, x.mult(n, v));
      // functor values are recomputed per degree; rebase the map onto them
      per.emplace_back(comps[static_cast<std::size_t>(n - x.lo())],
                       comps[static_cast<std::size_t>(n - x.lo() + 1)], fm.matrix());
    }
    mults.push_back(std::move(per));
  }
  return DegreewiseFamily(Provenance::FunctorImage, x.ring(), x.lo(), x.hi(),
                          x.zero_below(), std::move(comps), std::move(mults));
}

CoherentFunctor tensor_as_presentation(const FPModule& u) {
  Mat w = pruned_resolution(u);
  FPModule v_free = FPModule::free(u.ring(), w.rows());
  FPModule u_free = FPModule::free(u.ring(), w.cols());
  return CoherentFunctor::presentation(FPMap(v_free, u_free, w.transpose()));
}

}  // namespace gradstab
