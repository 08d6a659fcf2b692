#include "snakecheck/modcat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modcat {

using exactla::Echelon;
using exactla::PrimeMatrix;
using exactla::Subspace;
using exactla::Vec;

Algebra::Algebra(exactla::PrimeField f, int n_) : field(f), n(n_) {
  if (n < 1) throw std::invalid_argument("Algebra: nilpotency order must be >= 1");
}

RModule::RModule(Algebra alg, PrimeMatrix action) : alg_(alg), action_(std::move(action)) {
  if (action_.rows() != action_.cols())
    throw std::invalid_argument("RModule: action matrix must be square");
  if (!(action_.field() == alg_.field))
    throw std::invalid_argument("RModule: action field does not match the algebra");
  if (!action_.power(alg_.n).is_zero())
    throw std::invalid_argument("RModule: action is not nilpotent of order n");
}

RModule zero_module(Algebra alg) { return RModule(alg, PrimeMatrix(alg.field, 0, 0)); }

ModuleMap::ModuleMap(RModule src, RModule tgt, PrimeMatrix matrix)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(matrix)) {
  if (!(src_.algebra() == tgt_.algebra()))
    throw std::invalid_argument("ModuleMap: source and target over different algebras");
  if (mat_.rows() != tgt_.dim() || mat_.cols() != src_.dim())
    throw std::invalid_argument("ModuleMap: matrix shape must be tgt.dim x src.dim");
  if (!(mat_ * src_.action() == tgt_.action() * mat_))
    throw std::invalid_argument("ModuleMap: matrix does not commute with the x-action");
}

ModuleMap ModuleMap::zero(const RModule& src, const RModule& tgt) {
  return ModuleMap(src, tgt, PrimeMatrix(src.algebra().field, tgt.dim(), src.dim()));
}

ModuleMap ModuleMap::identity(const RModule& m) {
  return ModuleMap(m, m, PrimeMatrix::identity(m.algebra().field, m.dim()));
}

ModuleMap ModuleMap::operator+(const ModuleMap& rhs) const {
  if (!(src_ == rhs.src_ && tgt_ == rhs.tgt_))
    throw std::invalid_argument("ModuleMap: sum endpoint mismatch");
  return ModuleMap(src_, tgt_, mat_ + rhs.mat_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& rhs) const {
  if (!(src_ == rhs.src_ && tgt_ == rhs.tgt_))
    throw std::invalid_argument("ModuleMap: difference endpoint mismatch");
  return ModuleMap(src_, tgt_, mat_ - rhs.mat_);
}

ModuleMap ModuleMap::scaled(uint32_t c) const { return ModuleMap(src_, tgt_, mat_.scaled(c)); }

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(f.tgt() == g.src())) throw std::invalid_argument("compose: endpoint mismatch");
  return ModuleMap(f.src(), g.tgt(), g.matrix() * f.matrix());
}

int JordanType::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

RModule from_jordan(const Algebra& alg, std::vector<int> sizes) {
  for (int a : sizes)
    if (a < 1 || a > alg.n)
      throw std::invalid_argument("from_jordan: block size out of range [1, n]");
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  int dim = std::accumulate(sizes.begin(), sizes.end(), 0);
  PrimeMatrix x(alg.field, dim, dim);
  int off = 0;
  for (int a : sizes) {
    for (int j = 0; j + 1 < a; ++j) x.set(off + j + 1, off + j, 1);
    off += a;
  }
  return RModule(alg, std::move(x));
}

namespace {

std::vector<int> block_offsets(const std::vector<int>& sizes) {
  std::vector<int> off(sizes.size() + 1, 0);
  for (size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
  return off;
}

// Recognize a module that is already in canonical form, so that the heavy
// chain extraction (and a matrix inversion) can be skipped. Cosyzygies and
// covers always produce canonical modules, and they dominate the call graph.
bool detect_canonical(const RModule& m, std::vector<int>& sizes) {
  const PrimeMatrix& x = m.action();
  int d = m.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      uint32_t v = x(i, j);
      if (i == j + 1) {
        if (v > 1) return false;
      } else if (v != 0) {
        return false;
      }
    }
  sizes.clear();
  int current = 1;
  for (int j = 0; j + 1 < d; ++j) {
    if (x(j + 1, j) == 1) {
      ++current;
    } else {
      sizes.push_back(current);
      current = 1;
    }
  }
  if (d > 0) sizes.push_back(current);
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > m.algebra().n) return false;
    if (i > 0 && sizes[i] > sizes[i - 1]) return false;
  }
  return true;
}

}  // namespace

JordanData jordan_type(const RModule& m) {
  const Algebra& alg = m.algebra();
  const int d = m.dim();
  const int n = alg.n;

  std::vector<int> canon_sizes;
  if (detect_canonical(m, canon_sizes)) {
    RModule canonical = from_jordan(alg, canon_sizes);
    ModuleMap id(m, canonical, PrimeMatrix::identity(alg.field, d));
    ModuleMap id2(canonical, m, PrimeMatrix::identity(alg.field, d));
    return JordanData{JordanType{std::move(canon_sizes)}, canonical, id, id2};
  }

  // Kernels of increasing powers and the rank sequence.
  std::vector<Subspace> kernels;  // kernels[a] = ker(x^a)
  kernels.push_back(Subspace(alg.field, d));
  std::vector<int> rk = {d};  // rk[a] = rank(x^a)
  PrimeMatrix power = PrimeMatrix::identity(alg.field, d);
  for (int a = 1; a <= n; ++a) {
    power = power * m.action();
    auto ki = exactla::kernel_image(power);
    kernels.push_back(ki.kernel);
    rk.push_back(ki.rank);
  }
  rk.push_back(0);  // x^(n+1) = 0

  std::vector<int> mult(n + 1, 0);  // mult[a] = number of blocks of size a
  for (int a = 1; a <= n; ++a) mult[a] = rk[a - 1] - 2 * rk[a] + rk[a + 1];

  // Greedy chain extraction: levels in decreasing order; at each level the
  // vectors inherited from longer chains stay independent modulo the next
  // kernel, so new heads are chosen from the echelon basis of ker(x^a) in
  // pivot order.
  std::vector<std::pair<Vec, int>> heads;  // (head vector, chain length)
  std::vector<Vec> carried;
  for (int a = n; a >= 1; --a) {
    Echelon ech(alg.field, d);
    for (const Vec& v : kernels[a - 1].basis) ech.insert(v);
    for (const Vec& v : carried)
      if (!ech.insert(v)) throw std::logic_error("jordan_type: dependent inherited chain vector");
    std::vector<Vec> new_heads;
    int needed = mult[a];
    for (const Vec& v : kernels[a].basis) {
      if (needed == 0) break;
      if (ech.insert(v)) {
        new_heads.push_back(v);
        heads.emplace_back(v, a);
        --needed;
      }
    }
    if (needed != 0) throw std::logic_error("jordan_type: chain head extraction failed");
    std::vector<Vec> next;
    for (const Vec& v : carried) next.push_back(m.action().apply(v));
    for (const Vec& v : new_heads) next.push_back(m.action().apply(v));
    carried = std::move(next);
  }

  std::vector<int> sizes;
  std::vector<Vec> columns;
  for (const auto& [h, len] : heads) {
    sizes.push_back(len);
    Vec v = h;
    for (int j = 0; j < len; ++j) {
      columns.push_back(v);
      if (j + 1 < len) v = m.action().apply(v);
    }
  }
  if (std::accumulate(sizes.begin(), sizes.end(), 0) != d)
    throw std::logic_error("jordan_type: chain lengths do not sum to dim");

  RModule canonical = from_jordan(alg, sizes);
  PrimeMatrix c = PrimeMatrix::from_columns(alg.field, d, columns);
  ModuleMap from_can(canonical, m, c);
  ModuleMap to_can(m, canonical, exactla::inverse(c));
  return JordanData{JordanType{std::move(sizes)}, canonical, to_can, from_can};
}

std::vector<ModuleMap> hom_basis(const RModule& m, const RModule& n) {
  if (!(m.algebra() == n.algebra()))
    throw std::invalid_argument("hom_basis: modules over different algebras");
  JordanData jm = jordan_type(m);
  JordanData jn = jordan_type(n);
  const auto& a = jm.type.sizes;
  const auto& b = jn.type.sizes;
  auto offm = block_offsets(a);
  auto offn = block_offsets(b);
  std::vector<ModuleMap> basis;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      int mm = std::min(a[i], b[j]);
      for (int t = 0; t < mm; ++t) {
        PrimeMatrix h(m.algebra().field, n.dim(), m.dim());
        for (int s = 0; s + t < mm; ++s) h.set(offn[j] + b[j] - mm + t + s, offm[i] + s, 1);
        basis.push_back(ModuleMap(
            m, n, jn.from_canonical.matrix() * h * jm.to_canonical.matrix()));
      }
    }
  return basis;
}

Submodule submodule_from(const RModule& ambient, const Subspace& s) {
  if (s.ambient != ambient.dim())
    throw std::invalid_argument("submodule_from: ambient dimension mismatch");
  PrimeMatrix basis = PrimeMatrix::from_columns(ambient.algebra().field, s.ambient, s.basis);
  auto act = exactla::solve_right(basis, ambient.action() * basis);
  if (!act) throw std::invalid_argument("submodule_from: subspace is not x-invariant");
  RModule sub(ambient.algebra(), *act);
  return Submodule{sub, ModuleMap(sub, ambient, basis)};
}

Quotient quotient_by(const RModule& ambient, const Subspace& s) {
  if (s.ambient != ambient.dim())
    throw std::invalid_argument("quotient_by: ambient dimension mismatch");
  const auto f = ambient.algebra().field;
  const int d = ambient.dim();
  Echelon ech(f, d);
  for (const Vec& v : s.basis) ech.insert(v);
  std::vector<bool> is_pivot(d, false);
  for (const Vec& v : s.basis)
    for (int i = 0; i < d; ++i)
      if (v[i] != 0) {
        is_pivot[i] = true;
        break;
      }
  std::vector<int> rest;
  for (int i = 0; i < d; ++i)
    if (!is_pivot[i]) rest.push_back(i);
  const int q = static_cast<int>(rest.size());
  PrimeMatrix proj(f, q, d);
  for (int j = 0; j < d; ++j) {
    Vec e(d, 0);
    e[j] = 1;
    Vec r = ech.reduce(std::move(e));
    for (int k = 0; k < q; ++k) proj.set(k, j, r[rest[k]]);
  }
  PrimeMatrix lift(f, d, q);
  for (int k = 0; k < q; ++k) lift.set(rest[k], k, 1);
  RModule quo(ambient.algebra(), proj * ambient.action() * lift);
  return Quotient{quo, ModuleMap(ambient, quo, proj)};
}

KernelImageCokernel kernel_image_cokernel(const ModuleMap& f) {
  auto ki = exactla::kernel_image(f.matrix());
  Submodule ker = submodule_from(f.src(), ki.kernel);
  Submodule img = submodule_from(f.tgt(), ki.image);
  auto corest = exactla::solve_right(img.inclusion.matrix(), f.matrix());
  if (!corest) throw std::logic_error("kernel_image_cokernel: corestriction failed");
  Quotient coker = quotient_by(f.tgt(), ki.image);
  return KernelImageCokernel{ker.module,
                             ker.inclusion,
                             img.module,
                             img.inclusion,
                             ModuleMap(f.src(), img.module, *corest),
                             coker.module,
                             coker.projection};
}

DirectSum direct_sum(const RModule& m, const RModule& n) {
  if (!(m.algebra() == n.algebra()))
    throw std::invalid_argument("direct_sum: modules over different algebras");
  const auto f = m.algebra().field;
  const int dm = m.dim(), dn = n.dim();
  PrimeMatrix x(f, dm + dn, dm + dn);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) x.set(i, j, m.action()(i, j));
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dn; ++j) x.set(dm + i, dm + j, n.action()(i, j));
  RModule sum(m.algebra(), std::move(x));
  PrimeMatrix i1(f, dm + dn, dm), i2(f, dm + dn, dn), p1(f, dm, dm + dn), p2(f, dn, dm + dn);
  for (int i = 0; i < dm; ++i) {
    i1.set(i, i, 1);
    p1.set(i, i, 1);
  }
  for (int i = 0; i < dn; ++i) {
    i2.set(dm + i, i, 1);
    p2.set(i, dm + i, 1);
  }
  return DirectSum{sum, ModuleMap(m, sum, i1), ModuleMap(n, sum, i2), ModuleMap(sum, m, p1),
                   ModuleMap(sum, n, p2)};
}

namespace {

// Shared layout for the injective hull and its cokernel: block i of the
// canonical form embeds into copy i of R with its chain head at coordinate
// n - a_i + 1; surviving coordinates of copy i map to block sigma(i) of the
// cosyzygy, whose blocks are the sizes n - a_i sorted decreasingly.
struct CosyzygyLayout {
  JordanData jd;
  RModule hull;
  PrimeMatrix iota;  // M -> hull (already composed with to_canonical)
  RModule omega;
  PrimeMatrix q;    // hull -> omega
  PrimeMatrix sec;  // omega -> hull, coordinate section of q
};

CosyzygyLayout cosyzygy_layout(const RModule& m) {
  const Algebra& alg = m.algebra();
  const int n = alg.n;
  JordanData jd = jordan_type(m);
  const auto& a = jd.type.sizes;
  const int s = static_cast<int>(a.size());
  auto offm = block_offsets(a);

  RModule hull = from_jordan(alg, std::vector<int>(s, n));
  PrimeMatrix iota_can(alg.field, n * s, m.dim());
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < a[i]; ++k) iota_can.set(n * i + (n - a[i]) + k, offm[i] + k, 1);

  std::vector<int> omega_blocks;  // indices i with a_i < n, sorted by n-a_i desc
  for (int i = 0; i < s; ++i)
    if (a[i] < n) omega_blocks.push_back(i);
  std::stable_sort(omega_blocks.begin(), omega_blocks.end(),
                   [&](int u, int v) { return n - a[u] > n - a[v]; });
  std::vector<int> osizes;
  for (int i : omega_blocks) osizes.push_back(n - a[i]);
  RModule omega = from_jordan(alg, osizes);
  auto offo = block_offsets(osizes);

  PrimeMatrix q(alg.field, omega.dim(), n * s);
  PrimeMatrix sec(alg.field, n * s, omega.dim());
  for (size_t bi = 0; bi < omega_blocks.size(); ++bi) {
    int i = omega_blocks[bi];
    for (int r = 0; r < n - a[i]; ++r) {
      q.set(offo[bi] + r, n * i + r, 1);
      sec.set(n * i + r, offo[bi] + r, 1);
    }
  }
  return CosyzygyLayout{jd,    hull, iota_can * jd.to_canonical.matrix(),
                        omega, q,    sec};
}

}  // namespace

Hull injective_hull(const RModule& m) {
  CosyzygyLayout lay = cosyzygy_layout(m);
  return Hull{lay.hull, ModuleMap(m, lay.hull, lay.iota)};
}

Cosyzygy cosyzygy(const RModule& m) {
  CosyzygyLayout lay = cosyzygy_layout(m);
  return Cosyzygy{lay.omega, lay.hull, ModuleMap(m, lay.hull, lay.iota),
                  ModuleMap(lay.hull, lay.omega, lay.q)};
}

Cover projective_cover(const RModule& m) {
  const Algebra& alg = m.algebra();
  const int n = alg.n;
  JordanData jd = jordan_type(m);
  const auto& a = jd.type.sizes;
  const int s = static_cast<int>(a.size());
  auto offm = block_offsets(a);
  RModule cover = from_jordan(alg, std::vector<int>(s, n));
  PrimeMatrix pi_can(alg.field, m.dim(), n * s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < a[i]; ++k) pi_can.set(offm[i] + k, n * i + k, 1);
  return Cover{cover, ModuleMap(cover, m, jd.from_canonical.matrix() * pi_can)};
}

Syzygy syzygy(const RModule& m) {
  const Algebra& alg = m.algebra();
  const int n = alg.n;
  JordanData jd = jordan_type(m);
  const auto& a = jd.type.sizes;
  const int s = static_cast<int>(a.size());
  auto offm = block_offsets(a);
  RModule cover = from_jordan(alg, std::vector<int>(s, n));
  PrimeMatrix pi_can(alg.field, m.dim(), n * s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < a[i]; ++k) pi_can.set(offm[i] + k, n * i + k, 1);

  std::vector<int> oblocks;
  for (int i = 0; i < s; ++i)
    if (a[i] < n) oblocks.push_back(i);
  std::stable_sort(oblocks.begin(), oblocks.end(),
                   [&](int u, int v) { return n - a[u] > n - a[v]; });
  std::vector<int> osizes;
  for (int i : oblocks) osizes.push_back(n - a[i]);
  RModule omega = from_jordan(alg, osizes);
  auto offo = block_offsets(osizes);
  PrimeMatrix incl(alg.field, n * s, omega.dim());
  for (size_t bi = 0; bi < oblocks.size(); ++bi) {
    int i = oblocks[bi];
    for (int r = 0; r < n - a[i]; ++r) incl.set(n * i + a[i] + r, offo[bi] + r, 1);
  }
  return Syzygy{omega, cover, ModuleMap(omega, cover, incl),
                ModuleMap(cover, m, jd.from_canonical.matrix() * pi_can)};
}

Subspace phom_subspace(const RModule& m, const RModule& n) {
  if (!(m.algebra() == n.algebra()))
    throw std::invalid_argument("phom_subspace: modules over different algebras");
  const int ambient = m.dim() * n.dim();
  Echelon ech(m.algebra().field, ambient);
  if (m.dim() > 0 && n.dim() > 0) {
    Cover cov = projective_cover(n);
    for (const ModuleMap& h : hom_basis(m, cov.cover))
      ech.insert((cov.epi.matrix() * h.matrix()).flat());
  }
  return ech.to_subspace();
}

StableMap::StableMap(ModuleMap underlying, PrimeMatrix canonical)
    : underlying_(std::move(underlying)), canonical_(std::move(canonical)) {
  if (canonical_.rows() != underlying_.tgt().dim() ||
      canonical_.cols() != underlying_.src().dim())
    throw std::invalid_argument("StableMap: canonical matrix shape mismatch");
}

StableMap stable_reduce(const ModuleMap& f) {
  Subspace phom = phom_subspace(f.src(), f.tgt());
  Echelon ech(f.src().algebra().field, phom.ambient);
  for (const Vec& v : phom.basis) ech.insert(v);
  Vec reduced = ech.reduce(f.matrix().flat());
  return StableMap(f, PrimeMatrix::from_flat(f.src().algebra().field, f.tgt().dim(),
                                             f.src().dim(), reduced));
}

bool stable_equal(const ModuleMap& f, const ModuleMap& g) {
  if (!(f.src() == g.src() && f.tgt() == g.tgt()))
    throw std::invalid_argument("stable_equal: endpoint mismatch");
  return exactla::member((f.matrix() - g.matrix()).flat(), phom_subspace(f.src(), f.tgt()));
}

int sthom_dim(const RModule& m, const RModule& n) {
  return static_cast<int>(hom_basis(m, n).size()) - phom_subspace(m, n).dim();
}

StableMap stable_compose(const StableMap& g, const StableMap& f) {
  if (!(f.tgt() == g.src())) throw std::invalid_argument("stable_compose: endpoint mismatch");
  ModuleMap gf(f.src(), g.tgt(), g.canonical() * f.canonical());
  return stable_reduce(gf);
}

ModuleMap omega_inv_map(const ModuleMap& f) {
  const Algebra& alg = f.src().algebra();
  const int n = alg.n;
  CosyzygyLayout lm = cosyzygy_layout(f.src());
  CosyzygyLayout ln = cosyzygy_layout(f.tgt());
  const auto& a = lm.jd.type.sizes;
  const auto& b = ln.jd.type.sizes;
  auto offm = block_offsets(a);
  auto offn = block_offsets(b);

  PrimeMatrix f_can =
      ln.jd.to_canonical.matrix() * f.matrix() * lm.jd.from_canonical.matrix();

  // Extend hull-by-hull: the canonical hom basis element with shift t on the
  // block pair (a_i, b_j) lifts to multiplication by x^(a_i - min + t) from
  // copy i of R to copy j.
  PrimeMatrix big(alg.field, n * static_cast<int>(b.size()), n * static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      int mm = std::min(a[i], b[j]);
      for (int t = 0; t < mm; ++t) {
        uint32_t c = f_can(offn[j] + b[j] - mm + t, offm[i]);
        if (c == 0) continue;
        int k = a[i] - mm + t;
        for (int r = 0; r + k < n; ++r) {
          int row = n * static_cast<int>(j) + r + k;
          int col = n * static_cast<int>(i) + r;
          big.set(row, col, alg.field.add(big(row, col), c));
        }
      }
    }
  // Guard the closed form: big really extends f over the hull embeddings.
  if (!(big * lm.iota == ln.iota * f.matrix()))
    throw std::logic_error("omega_inv_map: hull extension identity failed");
  return ModuleMap(lm.omega, ln.omega, ln.q * big * lm.sec);
}

StableMap omega_inv_map(const StableMap& f) {
  ModuleMap rep(f.src(), f.tgt(), f.canonical());
  return stable_reduce(omega_inv_map(rep));
}

RModule omega_inv_module(const RModule& m, int k) {
  RModule out = m;
  for (int i = 0; i < k; ++i) out = cosyzygy(out).module;
  return out;
}

}  // namespace modcat
