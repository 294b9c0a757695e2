#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradstab/matrix.hpp"

namespace gradstab {

/// Length of a module: a nonnegative integer or infinite.
struct Length {
  bool finite = true;
  std::uint64_t value = 0;

  static Length infinite() { return {false, 0}; }
  static Length of(std::uint64_t v) { return {true, v}; }
  friend bool operator==(const Length& a, const Length& b) {
    return a.finite == b.finite && (!a.finite || a.value == b.value);
  }
  friend Length operator+(const Length& a, const Length& b) {
    if (!a.finite || !b.finite) return infinite();
    return of(a.value + b.value);
  }
  std::string render() const { return finite ? std::to_string(value) : "infinite"; }
};

/// grade(J, M) over a hereditary base: 0, 1, or infinite (M = JM).
struct Grade {
  bool infinite = false;
  int value = 0;

  static Grade inf() { return {true, 0}; }
  static Grade of(int v) { return {false, v}; }
  friend bool operator==(const Grade& a, const Grade& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }
  std::string render() const { return infinite ? "infinite" : std::to_string(value); }
};

/// Sorted finite set of associated primes.
class AssSet {
public:
  AssSet() = default;
  explicit AssSet(std::vector<PrimeIdealA> primes);

  const std::vector<PrimeIdealA>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }
  bool contains(const PrimeIdealA& p) const;
  bool subset_of(const AssSet& o) const;
  AssSet union_with(const AssSet& o) const;
  friend bool operator==(const AssSet& a, const AssSet& b) { return a.primes_ == b.primes_; }
  friend bool operator!=(const AssSet& a, const AssSet& b) { return !(a == b); }
  std::string render() const;  // "{}", "{(0), (u)}"

private:
  std::vector<PrimeIdealA> primes_;
};

/// A finitely presented A-module: the cokernel of the column map of its
/// presentation matrix (generators x relations). The Smith normal form of the
/// presentation and the derived canonical data are computed eagerly, so values
/// are immutable and cheap to share.
class FPModule {
public:
  explicit FPModule(Mat presentation);

  static FPModule zero(const BaseRing& ring) { return free(ring, 0); }
  static FPModule free(const BaseRing& ring, std::size_t rank);
  static FPModule cyclic(const RingElem& g);  // A/(g)
  /// A^rank + A/(f_1) + ... for the given nonzero nonunit factors.
  static FPModule of_invariants(const BaseRing& ring, std::size_t rank,
                                const std::vector<RingElem>& factors);

  const BaseRing& ring() const;
  std::size_t gens() const;
  const Mat& presentation() const;
  const SnfResult& presentation_snf() const;

  std::size_t free_rank() const;
  /// Monic nonunit invariant factors d_1 | d_2 | ...; canonical, so equality
  /// of (free rank, invariant factors) is an isomorphism test.
  const std::vector<RingElem>& invariant_factors() const;
  bool is_zero() const;
  bool isomorphic(const FPModule& o) const;

  /// Torsion decomposition: sorted (monic irreducible p, exponent e) pairs,
  /// one per cyclic summand A/(p^e).
  const std::vector<std::pair<RingElem, int>>& torsion() const;
  AssSet ass() const;
  Length length() const;
  /// Length of the localization at the given prime.
  Length localized_length(const PrimeIdealA& p) const;

  std::string normal_form_string() const;

private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

/// A-linear map between finitely presented modules, given on generators.
/// Well-definedness on presentations is verified at construction.
class FPMap {
public:
  FPMap(FPModule source, FPModule target, Mat matrix);

  static FPMap identity(const FPModule& m);
  static FPMap zero(FPModule source, FPModule target);
  /// Non-throwing well-definedness test, for validating user-supplied data.
  static bool well_defined(const FPModule& source, const FPModule& target, const Mat& matrix);

  const FPModule& source() const { return src_; }
  const FPModule& target() const { return tgt_; }
  const Mat& matrix() const { return mat_; }

  FPMap compose_after(const FPMap& inner) const;  // this o inner
  /// Equality as maps, i.e. modulo the target relations.
  bool same_map_as(const FPMap& o) const;
  bool is_zero_map() const;

private:
  FPModule src_, tgt_;
  Mat mat_;
};

// -- constructions -----------------------------------------------------------

struct DirectSum {
  FPModule module;
  std::vector<FPMap> injections;
  std::vector<FPMap> projections;
};
DirectSum direct_sum(const std::vector<FPModule>& parts);
/// Block-diagonal map between direct sums built from the given parts.
FPMap direct_sum_map(const DirectSum& src, const DirectSum& tgt, const std::vector<FPMap>& parts);

/// (span(top) + relations) / (span(bottom) + relations) inside the ambient
/// module; bottom must be contained in span(top) + relations.
struct Subquotient {
  FPModule module;   // presented on the columns of `top`
  Mat top;           // ambient-generator coordinates of the chosen generators
  FPModule ambient;
};
Subquotient subquotient(const FPModule& ambient, const Mat& top, const Mat& bottom);

/// Express ambient elements (columns, in ambient generator coordinates) in a
/// subquotient's generators; nullopt when not contained.
std::optional<Mat> express_in(const Subquotient& sq, const Mat& elements);

struct KernelResult {
  FPModule module;
  FPMap inclusion;  // into the source of the map
};
KernelResult kernel(const FPMap& f);

struct CokernelResult {
  FPModule module;
  FPMap projection;  // from the target of the map
};
CokernelResult cokernel(const FPMap& f);

struct ImageResult {
  FPModule module;
  FPMap inclusion;  // into the target of the map
};
ImageResult image(const FPMap& f);

/// Submodule of m generated by the given columns (in generator coordinates).
ImageResult submodule(const FPModule& m, const Mat& generators);

/// Pushout of b <-f- x -g-> c.
struct PushoutResult {
  FPModule module;
  FPMap from_b, from_c;
};
PushoutResult pushout(const FPMap& f, const FPMap& g);

/// Canonical small presentation with the isomorphisms to and from it.
struct Minimized {
  FPModule module;
  FPMap to;    // original -> minimized
  FPMap from;  // minimized -> original
};
Minimized minimize(const FPModule& m);

// -- hom / tensor / tor / ext ------------------------------------------------

/// Hom_A(M, N) presented on a generating set of actual maps. vec() is
/// column-major, so generator j corresponds to the matrix unvec(gen_vecs col j).
class HomResult {
public:
  const FPModule& module() const { return module_; }
  const FPModule& domain() const { return dom_; }
  const FPModule& codomain() const { return cod_; }
  /// The actual map M -> N represented by generator j.
  FPMap realize(std::size_t j) const;
  Mat realize_matrix(std::size_t j) const;
  /// Coordinates of a map in the hom generators.
  std::optional<Mat> express(const FPMap& f) const;
  std::optional<Mat> express_matrix(const Mat& map_matrix) const;

private:
  HomResult(FPModule module, FPModule dom, FPModule cod, Mat gen_vecs,
            std::shared_ptr<const SnfResult> gen_snf)
      : module_(std::move(module)), dom_(std::move(dom)), cod_(std::move(cod)),
        gen_vecs_(std::move(gen_vecs)), gen_snf_(std::move(gen_snf)) {}
  friend HomResult hom(const FPModule&, const FPModule&);

  FPModule module_, dom_, cod_;
  Mat gen_vecs_;
  std::shared_ptr<const SnfResult> gen_snf_;
};
HomResult hom(const FPModule& m, const FPModule& n);

/// Hom(U, -) applied to g: M -> N.
FPMap hom_map_covariant(const FPModule& u, const FPMap& g);
/// Hom(-, M) applied to f: V -> U, i.e. Hom(U, M) -> Hom(V, M).
FPMap hom_map_contravariant(const FPMap& f, const FPModule& m);

FPModule tensor(const FPModule& m, const FPModule& n);
FPMap tensor_map(const FPMap& f, const FPMap& g);

/// Length <= 1 free resolution 0 -> A^k -W-> A^(k+r) -> U -> 0 obtained by
/// pruning the Smith form of the presentation of U.
Mat pruned_resolution(const FPModule& u);

FPModule tor(int i, const FPModule& u, const FPModule& m);
FPMap tor_map(int i, const FPModule& u, const FPMap& g);
FPModule ext(int i, const FPModule& u, const FPModule& m);
FPMap ext_map(int i, const FPModule& u, const FPMap& g);

/// A/J as a module: A for (0), 0 for the unit ideal, A/(g) otherwise.
FPModule quotient_module(const IdealA& j);

/// grade(J, M): infinite iff M (x) A/J = 0; else 0 iff Hom(A/J, M) != 0; else 1.
Grade grade(const IdealA& j, const FPModule& m);
/// Independent route: least i with Ext^i(A/J, M) != 0, infinite when the
/// tensor vanishes and every Ext through i = 1 vanishes.
Grade grade_by_ext_scan(const IdealA& j, const FPModule& m);

}  // namespace gradstab
