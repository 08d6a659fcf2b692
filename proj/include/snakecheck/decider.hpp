#pragma once

#include <optional>
#include <string>

#include "snakecheck/toda.hpp"

// Decides whether a six-term exact sequence can be obtained from the snake
// lemma: exactness, vanishing of the two degree-3 obstruction classes, and
// membership of zero in the Toda bracket of the shifted extension classes.
namespace decider {

using seqlab::ExactSeq;
using seqlab::ExtClass;

enum class Obstruction { none, not_exact, neeman_ma, neeman_fk, toda };

std::string obstruction_name(Obstruction o);

struct VerdictData {
  ExtClass alpha, beta, gamma, delta;  // the four degree-1 classes
  ExtClass gamma_beta;                 // degree 2
  ExtClass dgb, gba;                   // the two degree-3 obstructions
  modcat::RModule k, l, m;
  toda::BracketVerdict bracket;
};

struct RealizabilityVerdict {
  bool exact = false;
  bool ext3_ma_zero = false;
  bool ext3_fk_zero = false;
  bool toda_defined = false;
  bool toda_contains_zero = false;
  bool realizable = false;
  Obstruction obstruction = Obstruction::none;
  std::optional<VerdictData> data;
};

// The two degree-3 vanishing conditions (delta.gamma.beta in Ext^3(M, A) and
// gamma.beta.alpha in Ext^3(F, K)) -- necessary for realizability.
std::pair<bool, bool> neeman_check(const ExactSeq& six);

RealizabilityVerdict snake_realizable(const ExactSeq& six);

// Length-5 criterion: realizable iff the degree-3 class of the whole
// sequence vanishes.
bool neeman5(const ExactSeq& five);

struct PaperExample {
  ExactSeq six;
  RealizabilityVerdict expected;
};

// The spliced six-term sequence 0 -> N -> S(+)R -> R -> N -> N -> S -> 0
// over F_p[x]/(x^3), which passes both degree-3 checks but whose Toda
// bracket misses zero. Works over any prime p.
PaperExample paper_example(uint32_t p);

// 0 -> S -> R -> R -> R -> R -> S -> 0 from the minimal projective
// resolution of the simple module; fails already at the degree-3 stage.
// Needs n >= 2.
ExactSeq resolution_example(const modcat::Algebra& alg);

struct FuzzResult {
  int trials = 0;
  int passed = 0;
  std::vector<int> failures;  // trial indices
};

// Soundness harness: random morphisms of short exact sequences, snake, then
// the decision procedure; every output must verify exact and decide
// realizable with consistent flags.
FuzzResult fuzz_snake(uint64_t seed, int trials, const seqlab::RandomParams& params);

}  // namespace decider
