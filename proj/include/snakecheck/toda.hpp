#pragma once

#include <optional>

#include "snakecheck/seqlab.hpp"

// Triangulated mechanics of the stable module category: the cone of a
// stable map via the injective hull, and Toda brackets with their
// indeterminacy subgroup and zero-membership test.
namespace toda {

using modcat::ModuleMap;
using modcat::RModule;
using modcat::StableMap;

// The standard triangle Y -> Z -> V -> omega_inv(Y) over y, built from
// 0 -> Y -> I(Y) (+) Z -> V -> 0 with the mono (hull embedding, y).
struct StableCone {
  StableMap of;
  RModule v;
  ModuleMap ins;   // Z -> V
  ModuleMap proj;  // V -> omega_inv(Y)
};

StableCone cone(const StableMap& y);

struct BracketVerdict {
  bool defined = false;
  // Present iff defined: the canonical composite f . g through the cone.
  std::optional<StableMap> representative;
  // z.Hom(omega_inv X, Z) + Hom(omega_inv Y, W).omega_inv(x) + PHom, in
  // flattened coordinates of Hom(omega_inv X, W).
  exactla::Subspace indeterminacy;
  bool contains_zero = false;
};

// The Toda bracket <z, y, x> of composable stable maps
// X -> Y -> Z -> W, nonempty iff y.x and z.y vanish stably.
BracketVerdict toda_bracket(const StableMap& x, const StableMap& y, const StableMap& z);

// A representative built from uniformly random solutions of the two lifting
// problems; used to exercise the coset property of the bracket.
StableMap toda_bracket_sample(const StableMap& x, const StableMap& y, const StableMap& z,
                              seqlab::Rng& rng);

}  // namespace toda
