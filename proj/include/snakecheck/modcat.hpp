#pragma once

#include <vector>

#include "snakecheck/exactla.hpp"

// The abelian category mod-R for R = F_p[x]/(x^n): finite dimensional
// F_p-spaces with a nilpotent x-action, R-linear maps between them, and the
// stable category obtained by factoring out maps through projectives.
// R is self-injective, so projectives and injectives coincide (direct sums
// of copies of R itself) and the cosyzygy functor is the shift of the
// triangulated structure on the stable category.
namespace modcat {

struct Algebra {
  exactla::PrimeField field;
  int n;  // nilpotency order, x^n = 0

  Algebra(exactla::PrimeField f, int n_);
  friend bool operator==(const Algebra&, const Algebra&) = default;
};

class RModule {
 public:
  // Validates action^n = 0.
  RModule(Algebra alg, exactla::PrimeMatrix action);

  const Algebra& algebra() const { return alg_; }
  int dim() const { return action_.rows(); }
  const exactla::PrimeMatrix& action() const { return action_; }

  friend bool operator==(const RModule&, const RModule&) = default;

 private:
  Algebra alg_;
  exactla::PrimeMatrix action_;
};

RModule zero_module(Algebra alg);

class ModuleMap {
 public:
  // Validates matrix * X_src = X_tgt * matrix and algebra agreement.
  ModuleMap(RModule src, RModule tgt, exactla::PrimeMatrix matrix);

  static ModuleMap zero(const RModule& src, const RModule& tgt);
  static ModuleMap identity(const RModule& m);

  const RModule& src() const { return src_; }
  const RModule& tgt() const { return tgt_; }
  const exactla::PrimeMatrix& matrix() const { return mat_; }
  bool is_zero() const { return mat_.is_zero(); }

  ModuleMap operator+(const ModuleMap& rhs) const;
  ModuleMap operator-(const ModuleMap& rhs) const;
  ModuleMap scaled(uint32_t c) const;

  friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

 private:
  RModule src_, tgt_;
  exactla::PrimeMatrix mat_;
};

// Composition g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

// Multiset of Jordan block sizes, kept sorted in decreasing order.
struct JordanType {
  std::vector<int> sizes;

  int total() const;
  friend bool operator==(const JordanType&, const JordanType&) = default;
};

struct JordanData {
  JordanType type;
  RModule canonical;
  ModuleMap to_canonical;    // M -> canonical, invertible
  ModuleMap from_canonical;  // canonical -> M, inverse of the above
};

// Canonical module for a block multiset: basis grouped by blocks in
// decreasing size order; within a block the action is the chain shift.
RModule from_jordan(const Algebra& alg, std::vector<int> sizes);

JordanData jordan_type(const RModule& m);

// Basis of Hom_R(M, N), deterministic order. Computed from the Jordan
// classification: for a block pair (J_a, J_b) the maps sending the chain
// head of J_a to the min(a,b) deepest socle layers of J_b form a basis, and
// the general case is conjugation by the canonicalizing isomorphisms.
std::vector<ModuleMap> hom_basis(const RModule& m, const RModule& n);

struct KernelImageCokernel {
  RModule kernel;
  ModuleMap kernel_inclusion;  // kernel -> src
  RModule image;
  ModuleMap image_inclusion;      // image -> tgt
  ModuleMap image_corestriction;  // src -> image (epi)
  RModule cokernel;
  ModuleMap cokernel_projection;  // tgt -> cokernel
};

KernelImageCokernel kernel_image_cokernel(const ModuleMap& f);

struct DirectSum {
  RModule sum;
  ModuleMap inj1, inj2;    // summand -> sum
  ModuleMap proj1, proj2;  // sum -> summand
};

DirectSum direct_sum(const RModule& m, const RModule& n);

struct Hull {
  RModule hull;  // isomorphic to R^s, s = number of Jordan blocks of M
  ModuleMap embedding;
};

Hull injective_hull(const RModule& m);

// 0 -> M -> I(M) -> cosyzygy -> 0, all canonical: the cosyzygy is a
// from_jordan module on the complement block sizes {n - a_i}. Iterating the
// construction therefore composes strictly on the nose.
struct Cosyzygy {
  RModule module;
  RModule hull;
  ModuleMap embedding;   // M -> hull
  ModuleMap projection;  // hull -> module
};

Cosyzygy cosyzygy(const RModule& m);

struct Cover {
  RModule cover;  // isomorphic to R^t, t = dim M / xM
  ModuleMap epi;
};

Cover projective_cover(const RModule& m);

// 0 -> syzygy -> P(M) -> M -> 0 with a canonical syzygy module.
struct Syzygy {
  RModule module;
  RModule cover;
  ModuleMap inclusion;  // module -> cover
  ModuleMap epi;        // cover -> M
};

Syzygy syzygy(const RModule& m);

// Submodule spanned by an x-invariant subspace, with its inclusion.
struct Submodule {
  RModule module;
  ModuleMap inclusion;
};

Submodule submodule_from(const RModule& ambient, const exactla::Subspace& s);

// Quotient by an x-invariant subspace; the quotient basis is the set of
// non-pivot standard coordinates of the echelonized subspace.
struct Quotient {
  RModule module;
  ModuleMap projection;
};

Quotient quotient_by(const RModule& ambient, const exactla::Subspace& s);

// The subspace of Hom(M, N) of maps factoring through a projective, in
// flattened row-major matrix coordinates. Computed through the projective
// cover of N; equality with the injective-hull route is a property test.
exactla::Subspace phom_subspace(const RModule& m, const RModule& n);

// A map in the stable category mod-R modulo projectives: the underlying map
// plus the canonical coset representative modulo PHom. Two stable maps are
// equal iff their canonical matrices agree.
class StableMap {
 public:
  StableMap(ModuleMap underlying, exactla::PrimeMatrix canonical);

  const ModuleMap& underlying() const { return underlying_; }
  const exactla::PrimeMatrix& canonical() const { return canonical_; }
  const RModule& src() const { return underlying_.src(); }
  const RModule& tgt() const { return underlying_.tgt(); }
  bool is_stably_zero() const { return canonical_.is_zero(); }

  friend bool operator==(const StableMap& a, const StableMap& b) {
    return a.src() == b.src() && a.tgt() == b.tgt() && a.canonical_ == b.canonical_;
  }

 private:
  ModuleMap underlying_;
  exactla::PrimeMatrix canonical_;
};

StableMap stable_reduce(const ModuleMap& f);
bool stable_equal(const ModuleMap& f, const ModuleMap& g);
int sthom_dim(const RModule& m, const RModule& n);

// Composition of stable maps, reduced.
StableMap stable_compose(const StableMap& g, const StableMap& f);

// The cosyzygy functor on maps: extend over the injective hulls and pass to
// cokernels. Well-defined on stable maps (changing f by PHom changes the
// result by PHom).
ModuleMap omega_inv_map(const ModuleMap& f);
StableMap omega_inv_map(const StableMap& f);

// Iterated canonical cosyzygy of a module.
RModule omega_inv_module(const RModule& m, int k);

}  // namespace modcat
