#include "snakecheck/toda.hpp"

#include <stdexcept>

namespace toda {

using exactla::Echelon;
using exactla::PrimeMatrix;
using exactla::Subspace;
using exactla::Vec;

StableCone cone(const StableMap& y) {
  const RModule& yy = y.src();
  const RModule& z = y.tgt();
  auto cz = modcat::cosyzygy(yy);
  auto ds = modcat::direct_sum(cz.hull, z);

  PrimeMatrix mono = PrimeMatrix::vstack(cz.embedding.matrix(), y.canonical());
  auto ki = exactla::kernel_image(mono);
  if (ki.rank != yy.dim()) throw std::logic_error("cone: hull embedding is not injective");
  auto quo = modcat::quotient_by(ds.sum, ki.image);

  PrimeMatrix ins = quo.projection.matrix() * ds.inj2.matrix();
  // proj is induced by (i, z) -> q(i); it kills the image of the mono, so it
  // descends along the quotient projection.
  PrimeMatrix q_ext = PrimeMatrix::hstack(
      cz.projection.matrix(), PrimeMatrix(yy.algebra().field, cz.module.dim(), z.dim()));
  auto proj = exactla::solve_left(quo.projection.matrix(), q_ext);
  if (!proj) throw std::logic_error("cone: projection descent failed");
  return StableCone{y, quo.module, modcat::ModuleMap(z, quo.module, ins),
                    modcat::ModuleMap(quo.module, cz.module, *proj)};
}

namespace {

struct LiftSystem {
  std::vector<modcat::ModuleMap> hom;  // candidate maps
  std::optional<exactla::AffineSolution> solution;
};

// Solve sum(lambda_k * wrapped_k) + span(phom) == target; the lambda block
// indexes hom, the tail coefficients sweep the PHom shifts.
LiftSystem solve_lift(std::vector<modcat::ModuleMap> hom, const std::vector<Vec>& phom,
                      const PrimeMatrix& target,
                      const std::vector<PrimeMatrix>& wrapped) {
  const auto f = target.field();
  const int ambient = target.rows() * target.cols();
  const int cols = static_cast<int>(hom.size() + phom.size());
  PrimeMatrix sys(f, ambient, cols);
  for (size_t k = 0; k < wrapped.size(); ++k) {
    Vec col = wrapped[k].flat();
    for (int i = 0; i < ambient; ++i) sys.set(i, static_cast<int>(k), col[i]);
  }
  for (size_t l = 0; l < phom.size(); ++l)
    for (int i = 0; i < ambient; ++i)
      sys.set(i, static_cast<int>(hom.size() + l), phom[l][i]);
  return LiftSystem{std::move(hom), exactla::solve_affine(sys, target.flat())};
}

modcat::ModuleMap assemble(const LiftSystem& sys, const Vec& coeffs, const RModule& src,
                           const RModule& tgt) {
  PrimeMatrix acc(src.algebra().field, tgt.dim(), src.dim());
  for (size_t k = 0; k < sys.hom.size(); ++k)
    if (coeffs[k] != 0) acc = acc + sys.hom[k].matrix().scaled(coeffs[k]);
  return modcat::ModuleMap(src, tgt, acc);
}

struct BracketState {
  RModule ox_src;  // omega_inv X
  modcat::StableMap ox;
  StableCone con;
  LiftSystem g_sys, f_sys;
};

BracketState bracket_state(const StableMap& x, const StableMap& y, const StableMap& z) {
  RModule ox_src = modcat::cosyzygy(x.src()).module;
  modcat::StableMap ox = modcat::omega_inv_map(x);
  StableCone con = cone(y);
  const RModule& w = z.tgt();

  auto hom_g = modcat::hom_basis(ox_src, con.v);
  std::vector<PrimeMatrix> wrapped_g;
  wrapped_g.reserve(hom_g.size());
  for (const auto& h : hom_g) wrapped_g.push_back(con.proj.matrix() * h.matrix());
  Subspace phom_g = modcat::phom_subspace(ox_src, con.proj.tgt());
  LiftSystem g_sys = solve_lift(std::move(hom_g), phom_g.basis, ox.canonical(), wrapped_g);

  auto hom_f = modcat::hom_basis(con.v, w);
  std::vector<PrimeMatrix> wrapped_f;
  wrapped_f.reserve(hom_f.size());
  for (const auto& h : hom_f) wrapped_f.push_back(h.matrix() * con.ins.matrix());
  Subspace phom_f = modcat::phom_subspace(z.src(), w);
  LiftSystem f_sys = solve_lift(std::move(hom_f), phom_f.basis, z.canonical(), wrapped_f);

  return BracketState{std::move(ox_src), std::move(ox), std::move(con), std::move(g_sys),
                      std::move(f_sys)};
}

Vec add_random_kernel(const exactla::AffineSolution& sol, seqlab::Rng& rng,
                      const exactla::PrimeField& f) {
  Vec out = sol.particular;
  for (const Vec& k : sol.nullspace.basis) {
    uint32_t c = rng.field_element(f);
    if (c == 0) continue;
    for (size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], f.mul(c, k[i]));
  }
  return out;
}

}  // namespace

BracketVerdict toda_bracket(const StableMap& x, const StableMap& y, const StableMap& z) {
  if (!(x.tgt() == y.src()) || !(y.tgt() == z.src()))
    throw std::invalid_argument("toda_bracket: maps do not compose");
  const auto f = x.src().algebra().field;
  const RModule& w = z.tgt();

  bool yx_zero = modcat::stable_compose(y, x).is_stably_zero();
  bool zy_zero = modcat::stable_compose(z, y).is_stably_zero();

  RModule ox_src = modcat::cosyzygy(x.src()).module;
  modcat::StableMap ox = modcat::omega_inv_map(x);

  // Indeterminacy subgroup; defined whether or not the bracket is nonempty.
  Echelon indet(f, w.dim() * ox_src.dim());
  for (const auto& h : modcat::hom_basis(ox_src, z.src()))
    indet.insert((z.canonical() * h.matrix()).flat());
  RModule oy = modcat::cosyzygy(y.src()).module;
  for (const auto& h : modcat::hom_basis(oy, w))
    indet.insert((h.matrix() * ox.canonical()).flat());
  for (const Vec& v : modcat::phom_subspace(ox_src, w).basis) indet.insert(v);

  BracketVerdict verdict{yx_zero && zy_zero, std::nullopt, indet.to_subspace(), false};
  if (!verdict.defined) return verdict;

  BracketState st = bracket_state(x, y, z);
  if (!st.g_sys.solution || !st.f_sys.solution)
    throw std::logic_error("toda_bracket: lifting problem unsolvable for a defined bracket");
  modcat::ModuleMap g = assemble(st.g_sys, st.g_sys.solution->particular, st.ox_src, st.con.v);
  modcat::ModuleMap ff = assemble(st.f_sys, st.f_sys.solution->particular, st.con.v, w);
  verdict.representative = modcat::stable_reduce(modcat::compose(ff, g));
  verdict.contains_zero =
      indet.contains(verdict.representative->canonical().flat());
  return verdict;
}

StableMap toda_bracket_sample(const StableMap& x, const StableMap& y, const StableMap& z,
                              seqlab::Rng& rng) {
  if (!(x.tgt() == y.src()) || !(y.tgt() == z.src()))
    throw std::invalid_argument("toda_bracket_sample: maps do not compose");
  if (!modcat::stable_compose(y, x).is_stably_zero() ||
      !modcat::stable_compose(z, y).is_stably_zero())
    throw std::invalid_argument("toda_bracket_sample: bracket is empty");
  const auto f = x.src().algebra().field;
  BracketState st = bracket_state(x, y, z);
  if (!st.g_sys.solution || !st.f_sys.solution)
    throw std::logic_error("toda_bracket_sample: lifting problem unsolvable");
  Vec gc = add_random_kernel(*st.g_sys.solution, rng, f);
  Vec fc = add_random_kernel(*st.f_sys.solution, rng, f);
  modcat::ModuleMap g = assemble(st.g_sys, gc, st.ox_src, st.con.v);
  modcat::ModuleMap ff = assemble(st.f_sys, fc, st.con.v, z.tgt());
  return modcat::stable_reduce(modcat::compose(ff, g));
}

}  // namespace toda
