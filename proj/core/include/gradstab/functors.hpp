#pragma once

#include "gradstab/family.hpp"

namespace gradstab {

/// A coherent functor on finitely generated A-modules, given either by a
/// presenting map f : V -> U (the functor is coker(Hom(U,-) -> Hom(V,-)))
/// or as one of the built-ins.
class CoherentFunctor {
public:
  enum class Kind { Presentation, HomFrom, TensorWith, Tor, Ext };

  static CoherentFunctor presentation(FPMap f);  // f : V -> U
  static CoherentFunctor hom_from(FPModule u);
  static CoherentFunctor tensor_with(FPModule u);
  static CoherentFunctor tor(int i, FPModule u);
  static CoherentFunctor ext(int i, FPModule u);

  Kind kind() const { return kind_; }
  int index() const { return index_; }
  const FPModule& argument() const;  // U for the built-ins
  const FPMap& presenting_map() const;

  std::string describe() const;

private:
  CoherentFunctor(Kind k, int i, std::optional<FPModule> u, std::optional<FPMap> f)
      : kind_(k), index_(i), u_(std::move(u)), f_(std::move(f)) {}
  Kind kind_;
  int index_ = 0;
  std::optional<FPModule> u_;
  std::optional<FPMap> f_;
};

FPModule apply(const CoherentFunctor& f, const FPModule& m);
FPMap apply_map(const CoherentFunctor& f, const FPMap& g);
/// F applied degreewise; multiplication maps are the functor images of the
/// originals. Provenance becomes FunctorImage.
DegreewiseFamily apply_family(const CoherentFunctor& f, const DegreewiseFamily& x);

/// The tensor functor - (x) U written as a presentation functor: the map
/// between free modules transposed from the pruned presentation of U.
/// apply() of the result agrees with TensorWith(U) on every input.
CoherentFunctor tensor_as_presentation(const FPModule& u);

}  // namespace gradstab
