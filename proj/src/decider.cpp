#include "snakecheck/decider.hpp"

#include <stdexcept>

namespace decider {

using exactla::PrimeMatrix;
using modcat::Algebra;
using modcat::ModuleMap;
using modcat::RModule;
using seqlab::ext1_class;
using seqlab::images_klm;
using seqlab::yoneda_compose;

std::string obstruction_name(Obstruction o) {
  switch (o) {
    case Obstruction::none: return "none";
    case Obstruction::not_exact: return "not-exact";
    case Obstruction::neeman_ma: return "neeman-MA";
    case Obstruction::neeman_fk: return "neeman-FK";
    case Obstruction::toda: return "toda";
  }
  return "unknown";
}

namespace {

struct Pipeline {
  seqlab::ImagesKLM images;
  ExtClass alpha, beta, gamma, delta, gamma_beta, dgb, gba;
};

Pipeline run_pipeline(const ExactSeq& six) {
  auto im = images_klm(six);
  ExtClass delta = ext1_class(im.seq_abk);   // Ext^1(K, A)
  ExtClass gamma = ext1_class(im.seq_kcl);   // Ext^1(L, K)
  ExtClass beta = ext1_class(im.seq_ldm);    // Ext^1(M, L)
  ExtClass alpha = ext1_class(im.seq_mef);   // Ext^1(F, M)
  ExtClass gb = yoneda_compose(beta, gamma);  // Ext^2(M, K)
  ExtClass dgb = yoneda_compose(gb, delta);   // Ext^3(M, A)
  ExtClass gba = yoneda_compose(alpha, gb);   // Ext^3(F, K)
  return Pipeline{std::move(im), std::move(alpha), std::move(beta), std::move(gamma),
                  std::move(delta), std::move(gb), std::move(dgb), std::move(gba)};
}

}  // namespace

std::pair<bool, bool> neeman_check(const ExactSeq& six) {
  Pipeline p = run_pipeline(six);
  return {p.dgb.is_zero(), p.gba.is_zero()};
}

RealizabilityVerdict snake_realizable(const ExactSeq& six) {
  RealizabilityVerdict v;
  if (six.length() != 6)
    throw std::invalid_argument("snake_realizable: needs a six-term sequence");
  if (!six.verified() && !seqlab::verify_exact(six).exact) {
    v.obstruction = Obstruction::not_exact;
    return v;
  }
  ExactSeq s = seqlab::ensure_verified(six);
  v.exact = true;

  Pipeline p = run_pipeline(s);
  v.ext3_ma_zero = p.dgb.is_zero();
  v.ext3_fk_zero = p.gba.is_zero();

  // Bracket endpoints: shift delta three steps and gamma.beta one so the
  // three maps compose through the canonical cosyzygy tower.
  modcat::StableMap x = p.alpha.rep;                      // F -> O^-1 M
  modcat::StableMap y = modcat::omega_inv_map(p.gamma_beta.rep);  // O^-1 M -> O^-3 K
  modcat::StableMap z = p.delta.rep;
  for (int i = 0; i < 3; ++i) z = modcat::omega_inv_map(z);  // O^-3 K -> O^-4 A

  toda::BracketVerdict bracket = toda::toda_bracket(x, y, z);
  v.toda_defined = bracket.defined;
  v.toda_contains_zero = bracket.contains_zero;
  v.realizable = v.exact && v.ext3_ma_zero && v.ext3_fk_zero && v.toda_contains_zero;
  if (!v.ext3_ma_zero)
    v.obstruction = Obstruction::neeman_ma;
  else if (!v.ext3_fk_zero)
    v.obstruction = Obstruction::neeman_fk;
  else if (!v.toda_contains_zero)
    v.obstruction = Obstruction::toda;
  else
    v.obstruction = Obstruction::none;
  v.data = VerdictData{p.alpha, p.beta, p.gamma, p.delta, p.gamma_beta,
                       p.dgb,   p.gba,  p.images.k, p.images.l, p.images.m,
                       std::move(bracket)};
  return v;
}

bool neeman5(const ExactSeq& five) {
  if (five.length() != 5) throw std::invalid_argument("neeman5: needs a five-term sequence");
  ExactSeq s = seqlab::ensure_verified(five);
  return seqlab::long_class(s).is_zero();
}

namespace {

// Multiplication by x^k as an endomorphism of R = J_n.
PrimeMatrix mult_xk(const Algebra& alg, int k) {
  PrimeMatrix m(alg.field, alg.n, alg.n);
  for (int r = 0; r + k < alg.n; ++r) m.set(r + k, r, 1);
  return m;
}

}  // namespace

PaperExample paper_example(uint32_t p) {
  Algebra alg(exactla::PrimeField(p), 3);
  const auto f = alg.field;
  RModule s = modcat::from_jordan(alg, {1});
  RModule n = modcat::from_jordan(alg, {2});
  RModule r = modcat::from_jordan(alg, {3});
  auto b_sum = modcat::direct_sum(s, r);  // the module S (+) R

  // alpha: 0 -> S -> N -> S -> 0, the non-split extension.
  ModuleMap a_incl(s, n, PrimeMatrix::from_rows(f, {{0}, {1}}));
  ModuleMap a_proj(n, s, PrimeMatrix::from_rows(f, {{1, 0}}));
  ExactSeq alpha_seq = seqlab::ensure_verified(ExactSeq({s, n, s}, {a_incl, a_proj}));

  // eta: 0 -> N -> R -> N -> S -> 0 from the canonical embedding, the
  // x-multiplication collapse and the head projection.
  ModuleMap u(n, r, PrimeMatrix::from_rows(f, {{0, 0}, {1, 0}, {0, 1}}));
  ModuleMap v(r, n, PrimeMatrix::from_rows(f, {{0, 0, 0}, {1, 0, 0}}));
  ModuleMap w(n, s, PrimeMatrix::from_rows(f, {{1, 0}}));
  ExactSeq eta_seq = seqlab::ensure_verified(ExactSeq({n, r, n, s}, {u, v, w}));

  // delta: 0 -> N -> S(+)R -> N -> 0, non-split over any field: the head of
  // N maps to (head of S) + x.(generator of R), which no retraction can see.
  PrimeMatrix rmat(f, 4, 2);
  rmat.set(0, 0, 1);  // S coordinate
  rmat.set(2, 0, 1);  // x . generator of R
  rmat.set(3, 1, 1);
  ModuleMap r_incl(n, b_sum.sum, rmat);
  PrimeMatrix smat(f, 2, 4);
  smat.set(1, 0, 1);            // S head -> e2
  smat.set(0, 1, f.neg(1));     // generator of R -> -e1
  smat.set(1, 2, f.neg(1));
  ModuleMap s_epi(b_sum.sum, n, smat);
  ExactSeq delta_seq = seqlab::ensure_verified(ExactSeq({n, b_sum.sum, n}, {r_incl, s_epi}));

  ExactSeq six = seqlab::splice(seqlab::splice(delta_seq, eta_seq), alpha_seq);

  RealizabilityVerdict expected;
  expected.exact = true;
  expected.ext3_ma_zero = true;
  expected.ext3_fk_zero = true;
  expected.toda_defined = true;
  expected.toda_contains_zero = false;
  expected.realizable = false;
  expected.obstruction = Obstruction::toda;
  return PaperExample{std::move(six), std::move(expected)};
}

ExactSeq resolution_example(const Algebra& alg) {
  if (alg.n < 2)
    throw std::invalid_argument("resolution_example: needs nilpotency order >= 2");
  const auto f = alg.field;
  const int n = alg.n;
  RModule s = modcat::from_jordan(alg, {1});
  RModule r = modcat::from_jordan(alg, {n});

  PrimeMatrix socle(f, n, 1);
  socle.set(n - 1, 0, 1);
  ModuleMap incl(s, r, socle);
  ModuleMap d3(r, r, mult_xk(alg, 1));
  ModuleMap d2(r, r, mult_xk(alg, n - 1));
  ModuleMap d1(r, r, mult_xk(alg, 1));
  PrimeMatrix head(f, 1, n);
  head.set(0, 0, 1);
  ModuleMap d0(r, s, head);
  return seqlab::ensure_verified(ExactSeq({s, r, r, r, r, s}, {incl, d3, d2, d1, d0}));
}

FuzzResult fuzz_snake(uint64_t seed, int trials, const seqlab::RandomParams& params) {
  FuzzResult out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    // Independent stream per trial, so shards can be recombined freely.
    seqlab::Rng rng(seed * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(t) + 1);
    seqlab::SesMorphism m = seqlab::random_ses_morphism(rng, params);
    ExactSeq six = seqlab::snake(m);
    bool ok = seqlab::verify_exact(six).exact;
    if (ok) {
      RealizabilityVerdict v = snake_realizable(six);
      ok = v.realizable && v.toda_defined == (v.ext3_ma_zero && v.ext3_fk_zero);
    }
    if (ok)
      ++out.passed;
    else
      out.failures.push_back(t);
  }
  return out;
}

}  // namespace decider
