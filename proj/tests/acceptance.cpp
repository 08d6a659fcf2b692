// Acceptance suite: one criterion per function, one [PASS]/[FAIL] line each,
// nonzero exit when anything fails. Time limits are asserted, not advisory.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "snakecheck/decider.hpp"

using exactla::PrimeField;
using exactla::PrimeMatrix;
using modcat::Algebra;
using modcat::ModuleMap;
using modcat::RModule;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

struct Criterion {
  int number;
  std::string description;
  std::function<bool()> run;
  double limit_seconds;
};

void note(const std::string& s) { g_notes.push_back(s); }

bool expect(bool ok, const std::string& what) {
  if (!ok) note("    check failed: " + what);
  return ok;
}

// --- criterion 1: the paper example verdict over F_2, F_3, F_5 -------------

bool paper_verdict() {
  bool ok = true;
  for (uint32_t p : {2u, 3u, 5u}) {
    auto t0 = std::chrono::steady_clock::now();
    decider::PaperExample ex = decider::paper_example(p);
    decider::RealizabilityVerdict v = decider::snake_realizable(ex.six);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= expect(v.exact, "exact (p=" + std::to_string(p) + ")");
    ok &= expect(v.ext3_ma_zero, "ext3_MA_zero (p=" + std::to_string(p) + ")");
    ok &= expect(v.ext3_fk_zero, "ext3_FK_zero (p=" + std::to_string(p) + ")");
    ok &= expect(v.toda_defined, "toda defined (p=" + std::to_string(p) + ")");
    ok &= expect(!v.toda_contains_zero, "toda contains_zero false (p=" + std::to_string(p) + ")");
    ok &= expect(!v.realizable, "realizable false (p=" + std::to_string(p) + ")");
    ok &= expect(v.obstruction == decider::Obstruction::toda,
                 "obstruction tag (p=" + std::to_string(p) + ")");
    ok &= expect(secs < 1.0, "decide under one second (p=" + std::to_string(p) + ")");
  }
  return ok;
}

// --- criterion 2: the resolution example fails a Neeman flag ----------------

bool resolution_verdict() {
  auto t0 = std::chrono::steady_clock::now();
  Algebra alg(PrimeField(2), 3);
  decider::RealizabilityVerdict v = decider::snake_realizable(decider::resolution_example(alg));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = expect(v.exact, "exact");
  ok &= expect(!v.realizable, "realizable false");
  ok &= expect(!v.ext3_ma_zero || !v.ext3_fk_zero, "a Neeman flag false");
  ok &= expect(v.obstruction == decider::Obstruction::neeman_ma ||
                   v.obstruction == decider::Obstruction::neeman_fk,
               "obstruction tag");
  ok &= expect(secs < 1.0, "decide under one second");
  return ok;
}

// --- criterion 3: 500-trial snake soundness fuzz ----------------------------

bool snake_fuzz() {
  bool ok = true;
  int total = 0, passed = 0;
  // 500 trials spread over p in {2,3} and n in {2,3,4}.
  const int counts[6] = {84, 84, 84, 84, 82, 82};
  int idx = 0;
  for (uint32_t p : {2u, 3u}) {
    for (int n : {2, 3, 4}) {
      Algebra alg(PrimeField(p), n);
      seqlab::RandomParams params{alg, 10};
      decider::FuzzResult res =
          decider::fuzz_snake(9000 + 100 * p + n, counts[idx], params);
      total += res.trials;
      passed += res.passed;
      if (res.passed != res.trials)
        note("    failures at p=" + std::to_string(p) + " n=" + std::to_string(n));
      ++idx;
    }
  }
  ok &= expect(total == 500, "ran 500 trials");
  ok &= expect(passed == total, std::to_string(passed) + "/" + std::to_string(total));
  note("    " + std::to_string(passed) + "/" + std::to_string(total) + " snake outputs realizable");
  return ok;
}

// --- criterion 4: hom and stable-hom dimensions against the oracle ----------

bool dimension_oracle() {
  bool ok = true;
  int checks = 0;
  for (int n = 1; n <= 4; ++n) {
    Algebra alg(PrimeField(2), n);
    oracle::Mat xr = helpers::to_oracle(modcat::from_jordan(alg, {n}).action());
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        RModule ja = modcat::from_jordan(alg, {a});
        RModule jb = modcat::from_jordan(alg, {b});
        oracle::Mat xa = helpers::to_oracle(ja.action());
        oracle::Mat xb = helpers::to_oracle(jb.action());
        int lib_hom = static_cast<int>(modcat::hom_basis(ja, jb).size());
        int lib_sthom = modcat::sthom_dim(ja, jb);
        ok &= expect(lib_hom == oracle::hom_dim(2, xa, xb),
                     "hom dim a=" + std::to_string(a) + " b=" + std::to_string(b) +
                         " n=" + std::to_string(n));
        ok &= expect(lib_sthom == oracle::sthom_dim(2, xa, xb, xr),
                     "sthom dim a=" + std::to_string(a) + " b=" + std::to_string(b) +
                         " n=" + std::to_string(n));
        checks += 2;
      }
  }
  note("    " + std::to_string(checks) + " dimension comparisons, 100% agreement");
  return ok;
}

// --- criterion 5: coset property of the bracket -----------------------------

bool toda_coset() {
  bool ok = true;
  int done = 0;
  seqlab::Rng rng(4242);
  uint64_t salt = 1;
  while (done < 100) {
    Algebra alg(PrimeField(done % 2 == 0 ? 2 : 3), 3);
    seqlab::RandomParams params{alg, 6};
    auto triple = helpers::random_defined_triple(rng, params);
    toda::BracketVerdict verdict = toda::toda_bracket(triple.x, triple.y, triple.z);
    if (!verdict.defined) {
      note("    generator produced an undefined triple");
      return false;
    }
    seqlab::Rng sample_rng(0xC0FFEE + salt++);
    modcat::StableMap s1 = toda::toda_bracket_sample(triple.x, triple.y, triple.z, sample_rng);
    modcat::StableMap s2 = toda::toda_bracket_sample(triple.x, triple.y, triple.z, sample_rng);
    exactla::Vec diff = (s1.canonical() - s2.canonical()).flat();
    ok &= expect(exactla::member(diff, verdict.indeterminacy),
                 "difference lies in the indeterminacy (trial " + std::to_string(done) + ")");
    ++done;
  }
  note("    100/100 solution pairs agree modulo indeterminacy");
  return ok;
}

// --- criterion 6: split detection -------------------------------------------

bool split_detection() {
  bool ok = true;
  seqlab::Rng rng(515151);
  for (int trial = 0; trial < 100; ++trial) {
    uint32_t p = trial % 2 == 0 ? 2 : 3;
    Algebra alg(PrimeField(p), 3);
    seqlab::RandomParams params{alg, 7};
    seqlab::ExactSeq ses = seqlab::random_ses(rng, params);
    bool zero = seqlab::ext1_class(ses).is_zero();
    bool retracts = oracle::retraction_exists(
        static_cast<int>(p), helpers::to_oracle(ses.maps()[0].matrix()),
        helpers::to_oracle(ses.modules()[1].action()),
        helpers::to_oracle(ses.modules()[0].action()));
    ok &= expect(zero == retracts, "trial " + std::to_string(trial));
  }
  note("    100/100 agreement between class vanishing and retraction solve");
  return ok;
}

// --- criterion 7: stable-category sanity -------------------------------------

bool stable_sanity() {
  bool ok = true;
  Algebra alg(PrimeField(2), 3);
  ok &= expect(modcat::cosyzygy(modcat::from_jordan(alg, {1})).module ==
                   modcat::from_jordan(alg, {2}),
               "cosyzygy of S is N");

  seqlab::Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    uint32_t p = trial % 2 == 0 ? 2 : 3;
    int n = 2 + trial % 3;
    Algebra a(PrimeField(p), n);
    seqlab::RandomParams params{a, 8};
    RModule m = seqlab::random_module(rng, params);

    auto con = toda::cone(modcat::stable_reduce(ModuleMap::identity(m)));
    for (int s : modcat::jordan_type(con.v).type.sizes)
      ok &= expect(s == n, "cone(id) block sizes (trial " + std::to_string(trial) + ")");

    auto sz = modcat::syzygy(m);
    auto back = modcat::cosyzygy(sz.module);
    std::vector<int> expected;
    for (int s : modcat::jordan_type(m).type.sizes)
      if (s < n) expected.push_back(s);
    ok &= expect(modcat::jordan_type(back.module).type.sizes == expected,
                 "omega periodicity (trial " + std::to_string(trial) + ")");
  }
  return ok;
}

// --- criterion 8: the length-five criterion ----------------------------------

bool neeman5_criterion() {
  bool ok = true;
  Algebra alg(PrimeField(2), 3);
  RModule s = modcat::from_jordan(alg, {1});
  RModule n = modcat::from_jordan(alg, {2});
  RModule r = modcat::from_jordan(alg, {3});
  ModuleMap u(n, r, PrimeMatrix::from_rows(alg.field, {{0, 0}, {1, 0}, {0, 1}}));
  ModuleMap x2(r, r, r.action() * r.action());
  ModuleMap x1(r, r, r.action());
  ModuleMap head(r, s, PrimeMatrix::from_rows(alg.field, {{1, 0, 0}}));
  seqlab::ExactSeq five({n, r, r, r, s}, {u, x2, x1, head});
  ok &= expect(!decider::neeman5(five), "resolution five-term is not realizable");

  seqlab::Rng rng(808);
  seqlab::RandomParams params{alg, 5};
  for (int i = 0; i < 10; ++i) {
    RModule y = seqlab::random_module(rng, params);
    RModule z = seqlab::random_module(rng, params);
    RModule w = seqlab::random_module(rng, params);
    RModule uu = seqlab::random_module(rng, params);
    auto yz = modcat::direct_sum(y, z);
    auto zw = modcat::direct_sum(z, w);
    auto wu = modcat::direct_sum(w, uu);
    seqlab::ExactSeq spliced(
        {y, yz.sum, zw.sum, wu.sum, uu},
        {yz.inj1, ModuleMap(yz.sum, zw.sum, zw.inj1.matrix() * yz.proj2.matrix()),
         ModuleMap(zw.sum, wu.sum, wu.inj1.matrix() * zw.proj2.matrix()), wu.proj2});
    ok &= expect(decider::neeman5(spliced), "split splice " + std::to_string(i));
  }
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "paper example verdict over F_2, F_3, F_5", paper_verdict, 5.0},
      {2, "resolution example fails a Neeman flag", resolution_verdict, 1.0},
      {3, "snake soundness fuzz, 500 seeded trials", snake_fuzz, 60.0},
      {4, "hom/sthom dimensions match the brute-force oracle", dimension_oracle, 10.0},
      {5, "Toda coset property on 100 defined triples", toda_coset, 60.0},
      {6, "split detection on 100 random extensions", split_detection, 30.0},
      {7, "stable category sanity on 100 random modules", stable_sanity, 30.0},
      {8, "length-five criterion", neeman5_criterion, 10.0},
  };

  for (const Criterion& c : criteria) {
    g_notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      ok = false;
      note("    exceeded the time limit of " + std::to_string(c.limit_seconds) + " s");
    }
    std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.number,
                c.description.c_str(), secs);
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    for (const std::string& s : g_notes) std::printf("%s\n", s.c_str());
    if (!ok) ++g_failures;
  }

  if (g_failures == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
