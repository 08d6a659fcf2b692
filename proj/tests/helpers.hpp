#pragma once

#include <optional>
#include <vector>

#include "oracle.hpp"
#include "snakecheck/seqlab.hpp"

// Shared glue for the test suites.
namespace helpers {

inline oracle::Mat to_oracle(const exactla::PrimeMatrix& m) {
  oracle::Mat out(m.rows(), std::vector<int>(m.cols(), 0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = static_cast<int>(m(i, j));
  return out;
}

// A random element of {g in Hom(src, tgt) : post . g is stably zero}
// (or g . pre stably zero when from_left is false).
inline std::optional<modcat::ModuleMap> random_stably_annihilated(
    seqlab::Rng& rng, const modcat::ModuleMap& other, bool compose_on_left,
    const modcat::RModule& free_end) {
  using exactla::PrimeMatrix;
  using exactla::Vec;
  const modcat::RModule& src = compose_on_left ? free_end : other.tgt();
  const modcat::RModule& tgt = compose_on_left ? other.src() : free_end;
  // compose_on_left: looking for g: free_end -> other.src with other . g == 0
  // otherwise: g: other.tgt -> free_end with g . other == 0.
  const modcat::RModule& out_src = compose_on_left ? src : other.src();
  const modcat::RModule& out_tgt = compose_on_left ? other.tgt() : tgt;
  auto f = src.algebra().field;
  auto basis = modcat::hom_basis(src, tgt);
  auto phom = modcat::phom_subspace(out_src, out_tgt);
  const int ambient = out_tgt.dim() * out_src.dim();
  PrimeMatrix sys(f, ambient, static_cast<int>(basis.size() + phom.basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    PrimeMatrix wrapped = compose_on_left ? other.matrix() * basis[k].matrix()
                                          : basis[k].matrix() * other.matrix();
    Vec col = wrapped.flat();
    for (int i = 0; i < ambient; ++i) sys.set(i, static_cast<int>(k), col[i]);
  }
  for (size_t l = 0; l < phom.basis.size(); ++l)
    for (int i = 0; i < ambient; ++i)
      sys.set(i, static_cast<int>(basis.size() + l), phom.basis[l][i]);
  auto ki = exactla::kernel_image(sys);
  modcat::ModuleMap g = modcat::ModuleMap::zero(src, tgt);
  bool nontrivial = false;
  for (const Vec& v : ki.kernel.basis) {
    uint32_t c = rng.field_element(f);
    if (c == 0) continue;
    for (size_t k = 0; k < basis.size(); ++k)
      if (v[k] != 0) {
        g = g + basis[k].scaled(f.mul(c, v[k]));
        nontrivial = true;
      }
  }
  if (!nontrivial) return std::nullopt;
  return g;
}

struct DefinedTriple {
  modcat::StableMap x, y, z;
};

// Random composable triple with y.x and z.y stably zero, so the Toda
// bracket is nonempty. Falls back to zero maps when an annihilator space
// is trivial.
inline DefinedTriple random_defined_triple(seqlab::Rng& rng, const seqlab::RandomParams& p) {
  modcat::RModule xm = seqlab::random_module(rng, p);
  modcat::RModule ym = seqlab::random_module(rng, p);
  modcat::RModule zm = seqlab::random_module(rng, p);
  modcat::RModule wm = seqlab::random_module(rng, p);
  modcat::ModuleMap y = seqlab::random_hom(rng, ym, zm);
  auto z = random_stably_annihilated(rng, y, false, wm);
  auto x = random_stably_annihilated(rng, y, true, xm);
  modcat::ModuleMap zz = z ? *z : modcat::ModuleMap::zero(zm, wm);
  modcat::ModuleMap xx = x ? *x : modcat::ModuleMap::zero(xm, ym);
  return DefinedTriple{modcat::stable_reduce(xx), modcat::stable_reduce(y),
                       modcat::stable_reduce(zz)};
}

}  // namespace helpers
