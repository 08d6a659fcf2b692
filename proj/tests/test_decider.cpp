#include <doctest.h>

#include "helpers.hpp"
#include "snakecheck/decider.hpp"

using exactla::PrimeField;
using exactla::PrimeMatrix;
using modcat::Algebra;
using modcat::ModuleMap;
using modcat::RModule;
using namespace decider;

TEST_CASE("paper example: exact, Neeman-clean, Toda-obstructed") {
  for (uint32_t p : {2u, 3u, 5u}) {
    PaperExample ex = paper_example(p);
    RealizabilityVerdict v = snake_realizable(ex.six);
    CHECK(v.exact == ex.expected.exact);
    CHECK(v.ext3_ma_zero == ex.expected.ext3_ma_zero);
    CHECK(v.ext3_fk_zero == ex.expected.ext3_fk_zero);
    CHECK(v.toda_defined == ex.expected.toda_defined);
    CHECK(v.toda_contains_zero == ex.expected.toda_contains_zero);
    CHECK(v.realizable == ex.expected.realizable);
    CHECK(v.obstruction == Obstruction::toda);
    REQUIRE(v.data.has_value());
    CHECK(modcat::jordan_type(v.data->k).type.sizes == std::vector<int>{2});
    CHECK(modcat::jordan_type(v.data->l).type.sizes == std::vector<int>{1});
    CHECK(modcat::jordan_type(v.data->m).type.sizes == std::vector<int>{1});
  }
}

TEST_CASE("resolution example fails a Neeman flag") {
  for (int n : {2, 3, 4}) {
    Algebra alg(PrimeField(2), n);
    seqlab::ExactSeq six = resolution_example(alg);
    CHECK(seqlab::verify_exact(six).exact);
    for (int i = 1; i <= 4; ++i)
      CHECK(modcat::jordan_type(six.modules()[i]).type.sizes == std::vector<int>{n});
    RealizabilityVerdict v = snake_realizable(six);
    CHECK_FALSE(v.realizable);
    CHECK_FALSE((v.ext3_ma_zero && v.ext3_fk_zero));
    CHECK((v.obstruction == Obstruction::neeman_ma || v.obstruction == Obstruction::neeman_fk));
    CHECK(v.toda_defined == (v.ext3_ma_zero && v.ext3_fk_zero));
  }
}

TEST_CASE("neeman_check matches the pipeline flags") {
  auto ex = paper_example(2);
  auto [ma, fk] = neeman_check(ex.six);
  CHECK(ma);
  CHECK(fk);
  Algebra alg(PrimeField(2), 3);
  auto [ma2, fk2] = neeman_check(resolution_example(alg));
  CHECK_FALSE(ma2);
  CHECK_FALSE(fk2);
}

TEST_CASE("snake outputs decide realizable") {
  Algebra alg(PrimeField(2), 3);
  RModule s = modcat::from_jordan(alg, {1});
  RModule n = modcat::from_jordan(alg, {2});
  ModuleMap ai(s, n, PrimeMatrix::from_rows(alg.field, {{0}, {1}}));
  ModuleMap ap(n, s, PrimeMatrix::from_rows(alg.field, {{1, 0}}));
  seqlab::ExactSeq alpha({s, n, s}, {ai, ap});
  seqlab::SesMorphism zero(alpha, alpha, ModuleMap::zero(s, s), ModuleMap::zero(n, n),
                           ModuleMap::zero(s, s));
  RealizabilityVerdict v = snake_realizable(seqlab::snake(zero));
  CHECK(v.realizable);
  CHECK(v.obstruction == Obstruction::none);
}

TEST_CASE("the all-zero six-term sequence is trivially realizable") {
  Algebra alg(PrimeField(2), 3);
  RModule z = modcat::zero_module(alg);
  std::vector<RModule> mods(6, z);
  std::vector<ModuleMap> maps(5, ModuleMap::zero(z, z));
  RealizabilityVerdict v = snake_realizable(seqlab::ExactSeq(mods, maps));
  CHECK(v.exact);
  CHECK(v.realizable);
  CHECK(v.toda_defined);
  CHECK(v.toda_contains_zero);
}

TEST_CASE("non-exact input reports the not-exact obstruction") {
  Algebra alg(PrimeField(2), 3);
  RModule s = modcat::from_jordan(alg, {1});
  std::vector<RModule> mods(6, s);
  std::vector<ModuleMap> maps(5, ModuleMap::zero(s, s));
  RealizabilityVerdict v = snake_realizable(seqlab::ExactSeq(mods, maps));
  CHECK_FALSE(v.exact);
  CHECK_FALSE(v.realizable);
  CHECK(v.obstruction == Obstruction::not_exact);
  CHECK_FALSE(v.data.has_value());
}

TEST_CASE("degenerate split six-term sequences are realizable") {
  Algebra alg(PrimeField(3), 3);
  RModule s = modcat::from_jordan(alg, {1});
  RModule n = modcat::from_jordan(alg, {2});
  RModule z = modcat::zero_module(alg);
  // 0 -> S -> S -> 0 -> 0 -> N -> N -> 0
  std::vector<RModule> mods = {s, s, z, z, n, n};
  std::vector<ModuleMap> maps = {ModuleMap::identity(s), ModuleMap::zero(s, z),
                                 ModuleMap::zero(z, z), ModuleMap::zero(z, n),
                                 ModuleMap::identity(n)};
  RealizabilityVerdict v = snake_realizable(seqlab::ExactSeq(mods, maps));
  CHECK(v.exact);
  CHECK(v.realizable);
}

TEST_CASE("verdicts are invariant under transport along isomorphisms") {
  seqlab::Rng rng(606);
  Algebra alg(PrimeField(2), 3);
  auto transport = [&](const seqlab::ExactSeq& six) {
    std::vector<PrimeMatrix> t;
    std::vector<RModule> mods;
    for (const RModule& m : six.modules()) {
      PrimeMatrix ti = seqlab::random_invertible(rng, alg.field, m.dim());
      mods.push_back(RModule(alg, ti * m.action() * exactla::inverse(ti)));
      t.push_back(ti);
    }
    std::vector<ModuleMap> maps;
    for (size_t i = 0; i < six.maps().size(); ++i)
      maps.push_back(ModuleMap(mods[i], mods[i + 1],
                               t[i + 1] * six.maps()[i].matrix() * exactla::inverse(t[i])));
    return seqlab::ExactSeq(mods, maps);
  };

  auto check_same = [&](const seqlab::ExactSeq& six) {
    RealizabilityVerdict a = snake_realizable(six);
    RealizabilityVerdict b = snake_realizable(transport(six));
    CHECK(a.exact == b.exact);
    CHECK(a.ext3_ma_zero == b.ext3_ma_zero);
    CHECK(a.ext3_fk_zero == b.ext3_fk_zero);
    CHECK(a.toda_defined == b.toda_defined);
    CHECK(a.toda_contains_zero == b.toda_contains_zero);
    CHECK(a.realizable == b.realizable);
    CHECK(a.obstruction == b.obstruction);
  };

  check_same(paper_example(2).six);
  check_same(resolution_example(alg));
  seqlab::RandomParams params{alg, 6};
  for (int i = 0; i < 5; ++i) check_same(seqlab::snake(seqlab::random_ses_morphism(rng, params)));
}

TEST_CASE("neeman5 criterion") {
  Algebra alg(PrimeField(2), 3);
  RModule s = modcat::from_jordan(alg, {1});
  RModule n = modcat::from_jordan(alg, {2});
  RModule r = modcat::from_jordan(alg, {3});

  // 0 -> N -> R -> R -> R -> S -> 0 from the minimal resolution: class nonzero
  ModuleMap u(n, r, PrimeMatrix::from_rows(alg.field, {{0, 0}, {1, 0}, {0, 1}}));
  ModuleMap x2(r, r, r.action() * r.action());
  ModuleMap x1(r, r, r.action());
  ModuleMap head(r, s, PrimeMatrix::from_rows(alg.field, {{1, 0, 0}}));
  seqlab::ExactSeq five({n, r, r, r, s}, {u, x2, x1, head});
  CHECK_FALSE(neeman5(five));

  // padded trivial sequence: target Ext group vanishes
  RModule z = modcat::zero_module(alg);
  seqlab::ExactSeq padded({s, s, z, z, z},
                          {ModuleMap::identity(s), ModuleMap::zero(s, z), ModuleMap::zero(z, z),
                           ModuleMap::zero(z, z)});
  CHECK(neeman5(padded));

  // split-spliced five-term sequences
  seqlab::Rng rng(707);
  seqlab::RandomParams params{alg, 5};
  for (int i = 0; i < 10; ++i) {
    RModule y = seqlab::random_module(rng, params);
    RModule zz = seqlab::random_module(rng, params);
    RModule w = seqlab::random_module(rng, params);
    RModule uu = seqlab::random_module(rng, params);
    auto yz = modcat::direct_sum(y, zz);
    auto zw = modcat::direct_sum(zz, w);
    auto wu = modcat::direct_sum(w, uu);
    ModuleMap m1 = yz.inj1;
    ModuleMap m2(yz.sum, zw.sum, zw.inj1.matrix() * yz.proj2.matrix());
    ModuleMap m3(zw.sum, wu.sum, wu.inj1.matrix() * zw.proj2.matrix());
    ModuleMap m4 = wu.proj2;
    seqlab::ExactSeq spliced({y, yz.sum, zw.sum, wu.sum, uu}, {m1, m2, m3, m4});
    CHECK(seqlab::verify_exact(spliced).exact);
    CHECK(neeman5(spliced));
  }
}

TEST_CASE("fuzz harness: snake outputs are always realizable with consistent flags") {
  for (uint32_t p : {2u, 3u}) {
    for (int n : {2, 3, 4}) {
      Algebra alg(PrimeField(p), n);
      seqlab::RandomParams params{alg, 8};
      FuzzResult res = fuzz_snake(1000 + p * 10 + n, 20, params);
      CHECK(res.passed == res.trials);
      CHECK(res.failures.empty());
    }
  }
}
