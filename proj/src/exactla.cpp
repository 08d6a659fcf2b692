#include "snakecheck/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace exactla {

namespace {

bool is_prime_u32(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (p < 2 || p >= (1u << 16) || !is_prime_u32(p))
    throw std::invalid_argument("PrimeField: modulus must be a prime in [2, 2^16)");
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("PrimeField::inv: zero has no inverse");
  // extended Euclid
  long long t = 0, new_t = 1;
  long long r = p_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p_;
  return static_cast<uint32_t>(t);
}

PrimeMatrix::PrimeMatrix(PrimeField field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("PrimeMatrix: negative dimension");
  e_.assign(static_cast<size_t>(rows) * cols, 0);
}

PrimeMatrix PrimeMatrix::identity(PrimeField field, int n) {
  PrimeMatrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

PrimeMatrix PrimeMatrix::from_rows(PrimeField field,
                                   const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  PrimeMatrix m(field, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("PrimeMatrix::from_rows: ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

PrimeMatrix PrimeMatrix::from_flat(PrimeField field, int rows, int cols, const Vec& flat) {
  if (flat.size() != static_cast<size_t>(rows) * cols)
    throw std::invalid_argument("PrimeMatrix::from_flat: size mismatch");
  PrimeMatrix m(field, rows, cols);
  for (size_t k = 0; k < flat.size(); ++k) m.e_[k] = flat[k] % field.p();
  return m;
}

PrimeMatrix PrimeMatrix::from_columns(PrimeField field, int ambient,
                                      const std::vector<Vec>& cols) {
  PrimeMatrix m(field, ambient, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
    if (static_cast<int>(cols[j].size()) != ambient)
      throw std::invalid_argument("PrimeMatrix::from_columns: wrong column length");
    for (int i = 0; i < ambient; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

PrimeMatrix PrimeMatrix::hstack(const PrimeMatrix& a, const PrimeMatrix& b) {
  if (a.rows_ != b.rows_ || !(a.field_ == b.field_))
    throw std::invalid_argument("hstack: incompatible matrices");
  PrimeMatrix m(a.field_, a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) m.set(i, j, a(i, j));
    for (int j = 0; j < b.cols_; ++j) m.set(i, a.cols_ + j, b(i, j));
  }
  return m;
}

PrimeMatrix PrimeMatrix::vstack(const PrimeMatrix& a, const PrimeMatrix& b) {
  if (a.cols_ != b.cols_ || !(a.field_ == b.field_))
    throw std::invalid_argument("vstack: incompatible matrices");
  PrimeMatrix m(a.field_, a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.set(i, j, a(i, j));
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) m.set(a.rows_ + i, j, b(i, j));
  return m;
}

PrimeMatrix PrimeMatrix::operator*(const PrimeMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(field_ == rhs.field_))
    throw std::invalid_argument("PrimeMatrix: product dimension mismatch");
  PrimeMatrix out(field_, rows_, rhs.cols_);
  const uint64_t p = field_.p();
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      uint64_t a = (*this)(i, k);
      if (a == 0) continue;
      const size_t lhs_off = static_cast<size_t>(k) * rhs.cols_;
      const size_t out_off = static_cast<size_t>(i) * rhs.cols_;
      for (int j = 0; j < rhs.cols_; ++j) {
        uint64_t v = out.e_[out_off + j] + a * rhs.e_[lhs_off + j];
        out.e_[out_off + j] = static_cast<uint32_t>(v % p);
      }
    }
  }
  return out;
}

PrimeMatrix PrimeMatrix::operator+(const PrimeMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_))
    throw std::invalid_argument("PrimeMatrix: sum dimension mismatch");
  PrimeMatrix out = *this;
  for (size_t k = 0; k < e_.size(); ++k) out.e_[k] = field_.add(e_[k], rhs.e_[k]);
  return out;
}

PrimeMatrix PrimeMatrix::operator-(const PrimeMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_))
    throw std::invalid_argument("PrimeMatrix: difference dimension mismatch");
  PrimeMatrix out = *this;
  for (size_t k = 0; k < e_.size(); ++k) out.e_[k] = field_.sub(e_[k], rhs.e_[k]);
  return out;
}

PrimeMatrix PrimeMatrix::scaled(uint32_t c) const {
  PrimeMatrix out = *this;
  for (auto& x : out.e_) x = field_.mul(x, c % field_.p());
  return out;
}

PrimeMatrix PrimeMatrix::transpose() const {
  PrimeMatrix out(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
  return out;
}

PrimeMatrix PrimeMatrix::power(int k) const {
  if (rows_ != cols_) throw std::invalid_argument("PrimeMatrix::power: not square");
  if (k < 0) throw std::invalid_argument("PrimeMatrix::power: negative exponent");
  PrimeMatrix acc = identity(field_, rows_);
  for (int i = 0; i < k; ++i) acc = acc * (*this);
  return acc;
}

PrimeMatrix PrimeMatrix::submatrix(int r0, int c0, int nr, int nc) const {
  PrimeMatrix out(field_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) out.set(i, j, (*this)(r0 + i, c0 + j));
  return out;
}

Vec PrimeMatrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("PrimeMatrix::apply: vector length mismatch");
  Vec out(rows_, 0);
  const uint64_t p = field_.p();
  for (int i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    const size_t off = static_cast<size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) acc += static_cast<uint64_t>(e_[off + j]) * v[j];
    out[i] = static_cast<uint32_t>(acc % p);
  }
  return out;
}

Vec PrimeMatrix::row(int i) const {
  Vec out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
  return out;
}

Vec PrimeMatrix::col(int j) const {
  Vec out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

bool PrimeMatrix::is_zero() const {
  for (uint32_t x : e_)
    if (x != 0) return false;
  return true;
}

bool PrimeMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(field_, rows_);
}

Echelon::Echelon(PrimeField field, int ambient) : field_(field), ambient_(ambient) {}

Vec Echelon::reduce(Vec v) const {
  for (size_t k = 0; k < vecs_.size(); ++k) {
    uint32_t c = v[pivots_[k]];
    if (c == 0) continue;
    const Vec& w = vecs_[k];
    for (int i = 0; i < ambient_; ++i) v[i] = field_.sub(v[i], field_.mul(c, w[i]));
  }
  return v;
}

bool Echelon::insert(Vec v) {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("Echelon::insert: wrong vector length");
  v = reduce(std::move(v));
  int pv = -1;
  for (int i = 0; i < ambient_; ++i)
    if (v[i] != 0) {
      pv = i;
      break;
    }
  if (pv < 0) return false;
  uint32_t c = field_.inv(v[pv]);
  for (auto& x : v) x = field_.mul(x, c);
  // keep the basis fully reduced
  for (size_t k = 0; k < vecs_.size(); ++k) {
    uint32_t d = vecs_[k][pv];
    if (d == 0) continue;
    for (int i = 0; i < ambient_; ++i)
      vecs_[k][i] = field_.sub(vecs_[k][i], field_.mul(d, v[i]));
  }
  pivots_.push_back(pv);
  vecs_.push_back(std::move(v));
  return true;
}

bool Echelon::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (uint32_t x : r)
    if (x != 0) return false;
  return true;
}

Subspace Echelon::to_subspace() const {
  Subspace s(field_, ambient_);
  std::vector<size_t> order(vecs_.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return pivots_[a] < pivots_[b]; });
  for (size_t k : order) s.basis.push_back(vecs_[k]);
  return s;
}

namespace {

// Row echelon of [A | B]; pivots restricted to the A block. Returns pivot
// columns per pivot row.
struct RrefResult {
  PrimeMatrix m;
  std::vector<int> pivot_cols;
};

RrefResult rref_augmented(PrimeMatrix m, int a_cols) {
  const PrimeField f = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a_cols && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) {
        uint32_t t = m(r, j);
        m.set(r, j, m(piv, j));
        m.set(piv, j, t);
      }
    uint32_t c0 = f.inv(m(r, c));
    for (int j = 0; j < m.cols(); ++j) m.set(r, j, f.mul(m(r, j), c0));
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      uint32_t d = m(i, c);
      if (d == 0) continue;
      for (int j = 0; j < m.cols(); ++j) m.set(i, j, f.sub(m(i, j), f.mul(d, m(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

Subspace nullspace_from_rref(const RrefResult& rr, int n_cols, PrimeField f) {
  const auto& pivots = rr.pivot_cols;
  std::vector<bool> is_pivot(n_cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Echelon ech(f, n_cols);
  for (int j = 0; j < n_cols; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n_cols, 0);
    v[j] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(rr.m(static_cast<int>(r), j));
    ech.insert(std::move(v));
  }
  return ech.to_subspace();
}

}  // namespace

std::optional<AffineSolution> solve_affine(const PrimeMatrix& A, const Vec& b) {
  if (static_cast<int>(b.size()) != A.rows())
    throw std::invalid_argument("solve_affine: right-hand side length mismatch");
  const PrimeField f = A.field();
  PrimeMatrix aug(f, A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.set(i, j, A(i, j));
    aug.set(i, A.cols(), b[i]);
  }
  RrefResult rr = rref_augmented(std::move(aug), A.cols());
  int rank = static_cast<int>(rr.pivot_cols.size());
  for (int i = rank; i < A.rows(); ++i)
    if (rr.m(i, A.cols()) != 0) return std::nullopt;
  AffineSolution sol{Vec(A.cols(), 0), nullspace_from_rref(rr, A.cols(), f)};
  for (int r = 0; r < rank; ++r) sol.particular[rr.pivot_cols[r]] = rr.m(r, A.cols());
  return sol;
}

KernelImage kernel_image(const PrimeMatrix& A) {
  RrefResult rr = rref_augmented(A, A.cols());
  KernelImage out{nullspace_from_rref(rr, A.cols(), A.field()),
                  Subspace(A.field(), A.rows()),
                  static_cast<int>(rr.pivot_cols.size())};
  Echelon img(A.field(), A.rows());
  for (int j = 0; j < A.cols(); ++j) img.insert(A.col(j));
  out.image = img.to_subspace();
  return out;
}

Subspace subspace_span(PrimeField field, int ambient, const std::vector<Vec>& vectors) {
  Echelon ech(field, ambient);
  for (const Vec& v : vectors) ech.insert(v);
  return ech.to_subspace();
}

Subspace subspace_sum(const Subspace& U, const Subspace& V) {
  if (U.ambient != V.ambient || !(U.field == V.field))
    throw std::invalid_argument("subspace_sum: ambient mismatch");
  Echelon ech(U.field, U.ambient);
  for (const Vec& v : U.basis) ech.insert(v);
  for (const Vec& v : V.basis) ech.insert(v);
  return ech.to_subspace();
}

bool member(const Vec& v, const Subspace& U) {
  if (static_cast<int>(v.size()) != U.ambient)
    throw std::invalid_argument("member: vector length mismatch");
  Echelon ech(U.field, U.ambient);
  for (const Vec& w : U.basis) ech.insert(w);
  return ech.contains(v);
}

std::optional<PrimeMatrix> solve_right(const PrimeMatrix& A, const PrimeMatrix& B) {
  if (A.rows() != B.rows() || !(A.field() == B.field()))
    throw std::invalid_argument("solve_right: dimension mismatch");
  const PrimeField f = A.field();
  RrefResult rr = rref_augmented(PrimeMatrix::hstack(A, B), A.cols());
  int rank = static_cast<int>(rr.pivot_cols.size());
  for (int i = rank; i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j)
      if (rr.m(i, A.cols() + j) != 0) return std::nullopt;
  PrimeMatrix X(f, A.cols(), B.cols());
  for (int r = 0; r < rank; ++r)
    for (int j = 0; j < B.cols(); ++j) X.set(rr.pivot_cols[r], j, rr.m(r, A.cols() + j));
  return X;
}

std::optional<PrimeMatrix> solve_left(const PrimeMatrix& A, const PrimeMatrix& B) {
  auto xt = solve_right(A.transpose(), B.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

PrimeMatrix inverse(const PrimeMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse: not square");
  auto x = solve_right(A, PrimeMatrix::identity(A.field(), A.rows()));
  if (!x || rank(A) != A.rows()) throw std::invalid_argument("inverse: singular matrix");
  return *x;
}

int rank(const PrimeMatrix& A) {
  return static_cast<int>(rref_augmented(A, A.cols()).pivot_cols.size());
}

}  // namespace exactla
