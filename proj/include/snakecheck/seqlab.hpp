#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "snakecheck/modcat.hpp"

// Exact sequences over mod-R and their calculus: verification, the snake
// lemma, splicing, Ext classes presented as stable maps into iterated
// cosyzygies, Yoneda composition, and seeded random generation for fuzzing.
namespace seqlab {

using modcat::ModuleMap;
using modcat::RModule;

// A chain A_1 -> A_2 -> ... -> A_m with implicit zeros at both ends.
// Exactness of the bounded sequence 0 -> A_1 -> ... -> A_m -> 0 means the
// first map is injective, the last surjective and im = ker at the interior
// positions.
class ExactSeq {
 public:
  ExactSeq(std::vector<RModule> modules, std::vector<ModuleMap> maps);

  const std::vector<RModule>& modules() const { return modules_; }
  const std::vector<ModuleMap>& maps() const { return maps_; }
  int length() const { return static_cast<int>(modules_.size()); }
  bool verified() const { return verified_; }

  // Equality of the data; the verified flag is a certificate, not content.
  friend bool operator==(const ExactSeq& a, const ExactSeq& b) {
    return a.modules_ == b.modules_ && a.maps_ == b.maps_;
  }

 private:
  friend ExactSeq mark_verified(ExactSeq seq);
  std::vector<RModule> modules_;
  std::vector<ModuleMap> maps_;
  bool verified_ = false;
};

struct ExactnessReport {
  struct Position {
    int index;  // 1-based module position
    int image_dim;
    int kernel_dim;
    bool ok;
  };
  bool exact = false;
  bool alternating_sum_zero = false;
  std::vector<Position> positions;
};

ExactnessReport verify_exact(const ExactSeq& seq);
// Returns a copy with the verified flag set; throws if the sequence fails.
ExactSeq ensure_verified(const ExactSeq& seq);

// A morphism of short exact sequences; both squares must commute.
class SesMorphism {
 public:
  SesMorphism(ExactSeq top, ExactSeq bottom, ModuleMap f1, ModuleMap f2, ModuleMap f3);

  const ExactSeq& top() const { return top_; }
  const ExactSeq& bottom() const { return bottom_; }
  const ModuleMap& f1() const { return f1_; }
  const ModuleMap& f2() const { return f2_; }
  const ModuleMap& f3() const { return f3_; }

 private:
  ExactSeq top_, bottom_;
  ModuleMap f1_, f2_, f3_;
};

// The six-term kernel/cokernel sequence of a morphism of short exact
// sequences. The connecting map is computed from a linear (not R-linear)
// section of the top epimorphism; the result is R-linear and independent of
// the section.
ExactSeq snake(const SesMorphism& m);

struct ImagesKLM {
  RModule k, l, m;
  ExactSeq seq_abk;  // 0 -> A -> B -> K -> 0
  ExactSeq seq_kcl;  // 0 -> K -> C -> L -> 0
  ExactSeq seq_ldm;  // 0 -> L -> D -> M -> 0
  ExactSeq seq_mef;  // 0 -> M -> E -> F -> 0
};

ImagesKLM images_klm(const ExactSeq& six);

// A class in Ext^degree(source, target), presented as a stable map
// source -> omega_inv^degree(target). Degree 0 is allowed and means a plain
// stable map; extensions produce degree >= 1.
struct ExtClass {
  int degree;
  RModule source;
  RModule target;
  modcat::StableMap rep;

  bool is_zero() const { return rep.is_stably_zero(); }
};

ExtClass ext1_class(const ExactSeq& ses);
ExtClass long_class(const ExactSeq& seq);
ExtClass yoneda_compose(const ExtClass& f, const ExtClass& g);
ExtClass degree_zero_class(const modcat::StableMap& f);

ExactSeq splice(const ExactSeq& s1, const ExactSeq& s2);

// Deterministic seeded randomness. Raw mt19937_64 output is reduced by
// rejection sampling, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t below(uint64_t bound);  // uniform in [0, bound)
  uint32_t field_element(const exactla::PrimeField& f);

 private:
  std::mt19937_64 eng_;
};

// The linear space of commuting triples (f1, f2, f3) between two short
// exact sequences, with enough structure to sample random morphisms.
struct SesMorphismSpace {
  ExactSeq top, bottom;
  std::vector<std::array<ModuleMap, 3>> basis;
  exactla::Subspace flat;  // concatenated flattened triples, canonical

  SesMorphism sample(Rng& rng) const;
  SesMorphism zero() const;
};

SesMorphismSpace ses_morphism_space(const ExactSeq& top, const ExactSeq& bottom);

struct RandomParams {
  modcat::Algebra alg;
  int max_dim = 8;
};

RModule random_module(Rng& rng, const RandomParams& p);
ModuleMap random_hom(Rng& rng, const RModule& src, const RModule& tgt);
exactla::PrimeMatrix random_invertible(Rng& rng, const exactla::PrimeField& f, int dim);
ExactSeq random_ses(Rng& rng, const RandomParams& p);
SesMorphism random_ses_morphism(Rng& rng, const RandomParams& p);
// Random short exact sequence ending in a prescribed module (epi onto w)
// resp. starting from it (mono out of w); used to chain Yoneda-composable
// classes.
ExactSeq random_ses_onto(Rng& rng, const RandomParams& p, const RModule& w);
ExactSeq random_ses_from(Rng& rng, const RandomParams& p, const RModule& w);

}  // namespace seqlab
