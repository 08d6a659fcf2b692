#include "snakecheck/seqlab.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace seqlab {

using exactla::Echelon;
using exactla::PrimeMatrix;
using exactla::Subspace;
using exactla::Vec;
using modcat::compose;
using modcat::kernel_image_cokernel;

ExactSeq::ExactSeq(std::vector<RModule> modules, std::vector<ModuleMap> maps)
    : modules_(std::move(modules)), maps_(std::move(maps)) {
  if (modules_.empty()) throw std::invalid_argument("ExactSeq: needs at least one module");
  if (maps_.size() + 1 != modules_.size())
    throw std::invalid_argument("ExactSeq: needs one map fewer than modules");
  for (size_t i = 0; i < maps_.size(); ++i)
    if (!(maps_[i].src() == modules_[i] && maps_[i].tgt() == modules_[i + 1]))
      throw std::invalid_argument("ExactSeq: map " + std::to_string(i + 1) +
                                  " does not chain");
}

ExactSeq mark_verified(ExactSeq seq) {
  seq.verified_ = true;
  return seq;
}

ExactnessReport verify_exact(const ExactSeq& seq) {
  const auto f = seq.modules()[0].algebra().field;
  const int m = seq.length();
  ExactnessReport report;
  bool all_ok = true;
  for (int i = 0; i < m; ++i) {
    // Incoming image (zero subspace at the left end) against outgoing kernel
    // (full space at the right end).
    const int dim = seq.modules()[i].dim();
    Subspace image(f, dim);
    if (i > 0) image = exactla::kernel_image(seq.maps()[i - 1].matrix()).image;
    Subspace kernel(f, dim);
    if (i + 1 < m) {
      kernel = exactla::kernel_image(seq.maps()[i].matrix()).kernel;
    } else {
      Echelon full(f, dim);
      for (int j = 0; j < dim; ++j) {
        Vec e(dim, 0);
        e[j] = 1;
        full.insert(std::move(e));
      }
      kernel = full.to_subspace();
    }
    bool ok = image == kernel;
    report.positions.push_back({i + 1, image.dim(), kernel.dim(), ok});
    all_ok = all_ok && ok;
  }
  long long alt = 0;
  for (int i = 0; i < m; ++i) alt += (i % 2 == 0 ? 1 : -1) * seq.modules()[i].dim();
  report.alternating_sum_zero = (alt == 0);
  report.exact = all_ok && report.alternating_sum_zero;
  return report;
}

ExactSeq ensure_verified(const ExactSeq& seq) {
  if (seq.verified()) return seq;
  ExactnessReport r = verify_exact(seq);
  if (!r.exact) {
    for (const auto& p : r.positions)
      if (!p.ok)
        throw std::invalid_argument("sequence is not exact at position " +
                                    std::to_string(p.index));
    throw std::invalid_argument("sequence fails the alternating dimension sum");
  }
  return mark_verified(seq);
}

SesMorphism::SesMorphism(ExactSeq top, ExactSeq bottom, ModuleMap f1, ModuleMap f2,
                         ModuleMap f3)
    : top_(ensure_verified(top)),
      bottom_(ensure_verified(bottom)),
      f1_(std::move(f1)),
      f2_(std::move(f2)),
      f3_(std::move(f3)) {
  if (top_.length() != 3 || bottom_.length() != 3)
    throw std::invalid_argument("SesMorphism: rows must be short exact sequences");
  for (int i = 0; i < 3; ++i) {
    const ModuleMap& fi = i == 0 ? f1_ : (i == 1 ? f2_ : f3_);
    if (!(fi.src() == top_.modules()[i] && fi.tgt() == bottom_.modules()[i]))
      throw std::invalid_argument("SesMorphism: component " + std::to_string(i + 1) +
                                  " has wrong endpoints");
  }
  bool sq1 = compose(bottom_.maps()[0], f1_) == compose(f2_, top_.maps()[0]);
  bool sq2 = compose(bottom_.maps()[1], f2_) == compose(f3_, top_.maps()[1]);
  if (!sq1 || !sq2) throw std::invalid_argument("SesMorphism: squares do not commute");
}

ExactSeq snake(const SesMorphism& m) {
  const ModuleMap& a = m.top().maps()[0];
  const ModuleMap& b = m.top().maps()[1];
  const ModuleMap& c = m.bottom().maps()[0];
  const ModuleMap& d = m.bottom().maps()[1];

  auto k1 = kernel_image_cokernel(m.f1());
  auto k2 = kernel_image_cokernel(m.f2());
  auto k3 = kernel_image_cokernel(m.f3());

  // Kernel row: restrict a and b.
  auto k12 = exactla::solve_right(k2.kernel_inclusion.matrix(),
                                  a.matrix() * k1.kernel_inclusion.matrix());
  auto k23 = exactla::solve_right(k3.kernel_inclusion.matrix(),
                                  b.matrix() * k2.kernel_inclusion.matrix());
  if (!k12 || !k23) throw std::logic_error("snake: kernel restriction failed");

  // Cokernel row: descend c and d along the projections.
  auto c12 = exactla::solve_left(k1.cokernel_projection.matrix(),
                                 k2.cokernel_projection.matrix() * c.matrix());
  auto c23 = exactla::solve_left(k2.cokernel_projection.matrix(),
                                 k3.cokernel_projection.matrix() * d.matrix());
  if (!c12 || !c23) throw std::logic_error("snake: cokernel descent failed");

  // Connecting map: lift along a linear section of b, push through f2, pull
  // back through the bottom mono, project to coker f1.
  auto section = exactla::solve_right(
      b.matrix(), PrimeMatrix::identity(b.matrix().field(), m.top().modules()[2].dim()));
  if (!section) throw std::invalid_argument("snake: top row does not end in an epi");
  auto pullback = exactla::solve_right(
      c.matrix(), m.f2().matrix() * *section * k3.kernel_inclusion.matrix());
  if (!pullback) throw std::logic_error("snake: connecting pullback failed");
  PrimeMatrix conn = k1.cokernel_projection.matrix() * *pullback;

  std::vector<RModule> mods = {k1.kernel, k2.kernel, k3.kernel,
                               k1.cokernel, k2.cokernel, k3.cokernel};
  std::vector<ModuleMap> maps;
  maps.push_back(ModuleMap(k1.kernel, k2.kernel, *k12));
  maps.push_back(ModuleMap(k2.kernel, k3.kernel, *k23));
  maps.push_back(ModuleMap(k3.kernel, k1.cokernel, conn));
  maps.push_back(ModuleMap(k1.cokernel, k2.cokernel, *c12));
  maps.push_back(ModuleMap(k2.cokernel, k3.cokernel, *c23));
  ExactSeq six(std::move(mods), std::move(maps));
  if (!verify_exact(six).exact) throw std::logic_error("snake: output is not exact");
  return mark_verified(six);
}

ImagesKLM images_klm(const ExactSeq& six) {
  ExactSeq s = ensure_verified(six);
  if (s.length() != 6) throw std::invalid_argument("images_klm: needs a six-term sequence");
  auto ib = kernel_image_cokernel(s.maps()[1]);
  auto ic = kernel_image_cokernel(s.maps()[2]);
  auto id = kernel_image_cokernel(s.maps()[3]);

  ExactSeq abk({s.modules()[0], s.modules()[1], ib.image},
               {s.maps()[0], ib.image_corestriction});
  ExactSeq kcl({ib.image, s.modules()[2], ic.image}, {ib.image_inclusion, ic.image_corestriction});
  ExactSeq ldm({ic.image, s.modules()[3], id.image}, {ic.image_inclusion, id.image_corestriction});
  ExactSeq mef({id.image, s.modules()[4], s.modules()[5]}, {id.image_inclusion, s.maps()[4]});
  return ImagesKLM{ib.image,
                   ic.image,
                   id.image,
                   ensure_verified(abk),
                   ensure_verified(kcl),
                   ensure_verified(ldm),
                   ensure_verified(mef)};
}

namespace {

// Coefficients lambda with sum(lambda_k * cols_k) == target, as flattened
// matrices; free coefficients are zero, so the result is deterministic.
std::optional<Vec> solve_coeffs(const std::vector<PrimeMatrix>& cols,
                                const PrimeMatrix& target) {
  const auto f = target.field();
  const int ambient = target.rows() * target.cols();
  PrimeMatrix sys(f, ambient, static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) {
    Vec col = cols[k].flat();
    for (int i = 0; i < ambient; ++i) sys.set(i, static_cast<int>(k), col[i]);
  }
  auto sol = exactla::solve_affine(sys, target.flat());
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace

ExtClass ext1_class(const ExactSeq& ses) {
  ExactSeq s = ensure_verified(ses);
  if (s.length() != 3) throw std::invalid_argument("ext1_class: needs a short exact sequence");
  const RModule& y = s.modules()[0];
  const RModule& e = s.modules()[1];
  const RModule& x = s.modules()[2];
  auto cz = modcat::cosyzygy(y);

  // Extend the hull embedding over E (solvable since the hull is injective),
  // then induce on cokernels.
  std::vector<ModuleMap> basis = modcat::hom_basis(e, cz.hull);
  std::vector<PrimeMatrix> composed;
  composed.reserve(basis.size());
  for (const ModuleMap& h : basis) composed.push_back(h.matrix() * s.maps()[0].matrix());
  auto coeffs = solve_coeffs(composed, cz.embedding.matrix());
  if (!coeffs) throw std::logic_error("ext1_class: hull extension failed");
  PrimeMatrix usum(y.algebra().field, cz.hull.dim(), e.dim());
  for (size_t k = 0; k < basis.size(); ++k)
    if ((*coeffs)[k] != 0) usum = usum + basis[k].matrix().scaled((*coeffs)[k]);

  auto theta = exactla::solve_left(s.maps()[1].matrix(), cz.projection.matrix() * usum);
  if (!theta) throw std::logic_error("ext1_class: descent to the cokernel failed");
  ModuleMap rep(x, cz.module, *theta);
  return ExtClass{1, x, y, modcat::stable_reduce(rep)};
}

ExtClass degree_zero_class(const modcat::StableMap& f) {
  return ExtClass{0, f.src(), f.tgt(), f};
}

ExtClass yoneda_compose(const ExtClass& f, const ExtClass& g) {
  if (!(f.target == g.source))
    throw std::invalid_argument("yoneda_compose: target of f must equal source of g");
  modcat::StableMap shifted = g.rep;
  for (int i = 0; i < f.degree; ++i) shifted = modcat::omega_inv_map(shifted);
  modcat::StableMap rep = modcat::stable_compose(shifted, f.rep);
  return ExtClass{f.degree + g.degree, f.source, g.target, rep};
}

ExtClass long_class(const ExactSeq& seq) {
  ExactSeq s = ensure_verified(seq);
  const int m = s.length();
  if (m < 3) throw std::invalid_argument("long_class: needs at least three modules");
  if (m == 3) return ext1_class(s);

  // Factor at the interior images K_1, ..., K_{m-3} and Yoneda-compose the
  // short pieces from the right end.
  std::vector<modcat::KernelImageCokernel> imgs;
  for (int j = 1; j <= m - 3; ++j) imgs.push_back(kernel_image_cokernel(s.maps()[j]));

  ExactSeq last({imgs.back().image, s.modules()[m - 2], s.modules()[m - 1]},
                {imgs.back().image_inclusion, s.maps()[m - 2]});
  ExtClass cls = ext1_class(last);
  for (int j = m - 4; j >= 1; --j) {
    ExactSeq piece({imgs[j - 1].image, s.modules()[j + 1], imgs[j].image},
                   {imgs[j - 1].image_inclusion, imgs[j].image_corestriction});
    cls = yoneda_compose(cls, ext1_class(piece));
  }
  ExactSeq first({s.modules()[0], s.modules()[1], imgs[0].image},
                 {s.maps()[0], imgs[0].image_corestriction});
  return yoneda_compose(cls, ext1_class(first));
}

ExactSeq splice(const ExactSeq& s1, const ExactSeq& s2) {
  ExactSeq a = ensure_verified(s1);
  ExactSeq b = ensure_verified(s2);
  if (!(a.modules().back() == b.modules().front()))
    throw std::invalid_argument("splice: sequences do not share the joint module");
  // The joint module disappears; the epi onto it and the mono out of it
  // compose into the middle map.
  std::vector<RModule> mods(a.modules().begin(), a.modules().end() - 1);
  mods.insert(mods.end(), b.modules().begin() + 1, b.modules().end());
  std::vector<ModuleMap> maps(a.maps().begin(), a.maps().end() - 1);
  maps.push_back(compose(b.maps().front(), a.maps().back()));
  maps.insert(maps.end(), b.maps().begin() + 1, b.maps().end());
  ExactSeq out(std::move(mods), std::move(maps));
  if (!verify_exact(out).exact) throw std::logic_error("splice: output is not exact");
  return mark_verified(out);
}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  uint64_t rem = (UINT64_MAX % bound + 1) % bound;
  uint64_t r;
  do {
    r = eng_();
  } while (rem != 0 && r > UINT64_MAX - rem);
  return r % bound;
}

uint32_t Rng::field_element(const exactla::PrimeField& f) {
  return static_cast<uint32_t>(below(f.p()));
}

SesMorphism SesMorphismSpace::sample(Rng& rng) const {
  const auto f = top.modules()[0].algebra().field;
  ModuleMap f1 = ModuleMap::zero(top.modules()[0], bottom.modules()[0]);
  ModuleMap f2 = ModuleMap::zero(top.modules()[1], bottom.modules()[1]);
  ModuleMap f3 = ModuleMap::zero(top.modules()[2], bottom.modules()[2]);
  for (const auto& triple : basis) {
    uint32_t c = rng.field_element(f);
    if (c == 0) continue;
    f1 = f1 + triple[0].scaled(c);
    f2 = f2 + triple[1].scaled(c);
    f3 = f3 + triple[2].scaled(c);
  }
  return SesMorphism(top, bottom, f1, f2, f3);
}

SesMorphism SesMorphismSpace::zero() const {
  return SesMorphism(top, bottom, ModuleMap::zero(top.modules()[0], bottom.modules()[0]),
                     ModuleMap::zero(top.modules()[1], bottom.modules()[1]),
                     ModuleMap::zero(top.modules()[2], bottom.modules()[2]));
}

SesMorphismSpace ses_morphism_space(const ExactSeq& top, const ExactSeq& bottom) {
  ExactSeq t = ensure_verified(top);
  ExactSeq u = ensure_verified(bottom);
  if (t.length() != 3 || u.length() != 3)
    throw std::invalid_argument("ses_morphism_space: rows must be short exact");
  const auto f = t.modules()[0].algebra().field;
  auto h1 = modcat::hom_basis(t.modules()[0], u.modules()[0]);
  auto h2 = modcat::hom_basis(t.modules()[1], u.modules()[1]);
  auto h3 = modcat::hom_basis(t.modules()[2], u.modules()[2]);
  const ModuleMap& a = t.maps()[0];
  const ModuleMap& b = t.maps()[1];
  const ModuleMap& c = u.maps()[0];
  const ModuleMap& d = u.maps()[1];

  const int e1 = u.modules()[1].dim() * t.modules()[0].dim();
  const int e2 = u.modules()[2].dim() * t.modules()[1].dim();
  const int cols = static_cast<int>(h1.size() + h2.size() + h3.size());
  PrimeMatrix sys(f, e1 + e2, cols);
  int col = 0;
  for (const ModuleMap& h : h1) {
    Vec v = (c.matrix() * h.matrix()).flat();
    for (int i = 0; i < e1; ++i) sys.set(i, col, v[i]);
    ++col;
  }
  for (const ModuleMap& h : h2) {
    Vec v1 = (h.matrix() * a.matrix()).flat();
    for (int i = 0; i < e1; ++i) sys.set(i, col, f.neg(v1[i]));
    Vec v2 = (d.matrix() * h.matrix()).flat();
    for (int i = 0; i < e2; ++i) sys.set(e1 + i, col, v2[i]);
    ++col;
  }
  for (const ModuleMap& h : h3) {
    Vec v = (h.matrix() * b.matrix()).flat();
    for (int i = 0; i < e2; ++i) sys.set(e1 + i, col, f.neg(v[i]));
    ++col;
  }

  auto ki = exactla::kernel_image(sys);
  SesMorphismSpace space{t, u, {}, Subspace(f, t.modules()[0].dim() * u.modules()[0].dim() +
                                                   t.modules()[1].dim() * u.modules()[1].dim() +
                                                   t.modules()[2].dim() * u.modules()[2].dim())};
  Echelon flat(f, space.flat.ambient);
  for (const Vec& w : ki.kernel.basis) {
    ModuleMap f1 = ModuleMap::zero(t.modules()[0], u.modules()[0]);
    ModuleMap f2 = ModuleMap::zero(t.modules()[1], u.modules()[1]);
    ModuleMap f3 = ModuleMap::zero(t.modules()[2], u.modules()[2]);
    size_t k = 0;
    for (const ModuleMap& h : h1) {
      if (w[k] != 0) f1 = f1 + h.scaled(w[k]);
      ++k;
    }
    for (const ModuleMap& h : h2) {
      if (w[k] != 0) f2 = f2 + h.scaled(w[k]);
      ++k;
    }
    for (const ModuleMap& h : h3) {
      if (w[k] != 0) f3 = f3 + h.scaled(w[k]);
      ++k;
    }
    Vec cat = f1.matrix().flat();
    Vec c2 = f2.matrix().flat();
    Vec c3 = f3.matrix().flat();
    cat.insert(cat.end(), c2.begin(), c2.end());
    cat.insert(cat.end(), c3.begin(), c3.end());
    flat.insert(std::move(cat));
    space.basis.push_back({std::move(f1), std::move(f2), std::move(f3)});
  }
  space.flat = flat.to_subspace();
  return space;
}

RModule random_module(Rng& rng, const RandomParams& p) {
  int target = static_cast<int>(rng.below(static_cast<uint64_t>(p.max_dim) + 1));
  std::vector<int> sizes;
  int remaining = target;
  while (remaining > 0) {
    int a = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(std::min(p.alg.n, remaining))));
    sizes.push_back(a);
    remaining -= a;
  }
  return modcat::from_jordan(p.alg, sizes);
}

ModuleMap random_hom(Rng& rng, const RModule& src, const RModule& tgt) {
  ModuleMap out = ModuleMap::zero(src, tgt);
  for (const ModuleMap& h : modcat::hom_basis(src, tgt)) {
    uint32_t c = rng.field_element(src.algebra().field);
    if (c != 0) out = out + h.scaled(c);
  }
  return out;
}

PrimeMatrix random_invertible(Rng& rng, const exactla::PrimeField& f, int dim) {
  while (true) {
    PrimeMatrix m(f, dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m.set(i, j, rng.field_element(f));
    if (exactla::rank(m) == dim) return m;
  }
}

ExactSeq random_ses(Rng& rng, const RandomParams& p) {
  RModule src = random_module(rng, p);
  RModule tgt = random_module(rng, p);
  ModuleMap g = random_hom(rng, src, tgt);
  auto kic = kernel_image_cokernel(g);
  ExactSeq s({kic.kernel, src, kic.image}, {kic.kernel_inclusion, kic.image_corestriction});
  return mark_verified(std::move(s));
}

SesMorphism random_ses_morphism(Rng& rng, const RandomParams& p) {
  ExactSeq top = random_ses(rng, p);
  ExactSeq bottom = random_ses(rng, p);
  return ses_morphism_space(top, bottom).sample(rng);
}

ExactSeq random_ses_onto(Rng& rng, const RandomParams& p, const RModule& w) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto ds = modcat::direct_sum(random_module(rng, p), w);
    ModuleMap h = random_hom(rng, ds.sum, w);
    if (exactla::rank(h.matrix()) != w.dim()) continue;
    auto kic = kernel_image_cokernel(h);
    ExactSeq s({kic.kernel, ds.sum, w}, {kic.kernel_inclusion, ModuleMap(ds.sum, w, h.matrix())});
    return mark_verified(std::move(s));
  }
  // Fall back to the split projection.
  auto ds = modcat::direct_sum(random_module(rng, p), w);
  auto kic = kernel_image_cokernel(ds.proj2);
  ExactSeq s({kic.kernel, ds.sum, w}, {kic.kernel_inclusion, ds.proj2});
  return mark_verified(std::move(s));
}

ExactSeq random_ses_from(Rng& rng, const RandomParams& p, const RModule& w) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto ds = modcat::direct_sum(w, random_module(rng, p));
    ModuleMap h = random_hom(rng, w, ds.sum);
    if (exactla::rank(h.matrix()) != w.dim()) continue;
    auto kic = kernel_image_cokernel(h);
    ExactSeq s({w, ds.sum, kic.cokernel}, {h, kic.cokernel_projection});
    return mark_verified(std::move(s));
  }
  auto ds = modcat::direct_sum(w, random_module(rng, p));
  auto kic = kernel_image_cokernel(ds.inj1);
  ExactSeq s({w, ds.sum, kic.cokernel}, {ds.inj1, kic.cokernel_projection});
  return mark_verified(std::move(s));
}

}  // namespace seqlab
