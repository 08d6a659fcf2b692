#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Exact dense linear algebra over a prime field F_p. Everything here is
// exact integer arithmetic; there are no tolerances anywhere. Residues are
// stored in [0, p) as uint32_t, and since p < 2^16 all products fit in
// uint64_t without overflow.
namespace exactla {

class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t p() const { return p_; }

  uint32_t reduce(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
  }
  uint32_t inv(uint32_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  uint32_t p_;
};

using Vec = std::vector<uint32_t>;

class PrimeMatrix {
 public:
  PrimeMatrix(PrimeField field, int rows, int cols);  // zero matrix

  static PrimeMatrix identity(PrimeField field, int n);
  // Convenience constructor; entries are reduced mod p.
  static PrimeMatrix from_rows(PrimeField field,
                               const std::vector<std::vector<long long>>& rows);
  static PrimeMatrix from_flat(PrimeField field, int rows, int cols, const Vec& flat);
  static PrimeMatrix from_columns(PrimeField field, int ambient,
                                  const std::vector<Vec>& cols);
  static PrimeMatrix hstack(const PrimeMatrix& a, const PrimeMatrix& b);
  static PrimeMatrix vstack(const PrimeMatrix& a, const PrimeMatrix& b);

  const PrimeField& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  uint32_t operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, long long v) { e_[static_cast<size_t>(i) * cols_ + j] = field_.reduce(v); }

  PrimeMatrix operator*(const PrimeMatrix& rhs) const;
  PrimeMatrix operator+(const PrimeMatrix& rhs) const;
  PrimeMatrix operator-(const PrimeMatrix& rhs) const;
  PrimeMatrix scaled(uint32_t c) const;
  PrimeMatrix transpose() const;
  PrimeMatrix power(int k) const;  // square matrices
  PrimeMatrix submatrix(int r0, int c0, int nr, int nc) const;

  Vec apply(const Vec& v) const;  // matrix * column vector
  Vec row(int i) const;
  Vec col(int j) const;
  // Row-major flattening; the coordinate convention used for subspaces of
  // matrix spaces (hom spaces, PHom, bracket indeterminacy).
  Vec flat() const { return e_; }

  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const PrimeMatrix&, const PrimeMatrix&) = default;

 private:
  PrimeField field_;
  int rows_, cols_;
  Vec e_;
};

// A subspace of F_p^ambient in reduced echelon form: basis vectors have
// strictly increasing pivot positions, pivot entries are 1 and every pivot
// coordinate vanishes in the other basis vectors. Two equal subspaces have
// identical representations.
struct Subspace {
  PrimeField field;
  int ambient = 0;
  std::vector<Vec> basis;

  Subspace(PrimeField f, int amb) : field(f), ambient(amb) {}
  int dim() const { return static_cast<int>(basis.size()); }
  friend bool operator==(const Subspace&, const Subspace&) = default;
};

// Incremental reduced-echelon builder. Insertion keeps the basis fully
// back-reduced, so to_subspace() is canonical regardless of insert order.
class Echelon {
 public:
  Echelon(PrimeField field, int ambient);

  // Returns true if v enlarged the span.
  bool insert(Vec v);
  // Residue of v after reduction against the current basis.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  int dim() const { return static_cast<int>(vecs_.size()); }
  int ambient() const { return ambient_; }
  Subspace to_subspace() const;

 private:
  PrimeField field_;
  int ambient_;
  std::vector<int> pivots_;  // parallel to vecs_, strictly managed
  std::vector<Vec> vecs_;
};

struct AffineSolution {
  Vec particular;      // free variables set to 0
  Subspace nullspace;  // canonical basis of ker A
};

// Solve A x = b. Returns nothing when inconsistent.
std::optional<AffineSolution> solve_affine(const PrimeMatrix& A, const Vec& b);

struct KernelImage {
  Subspace kernel;  // ambient = cols
  Subspace image;   // ambient = rows, canonical echelon of the column space
  int rank = 0;
};

KernelImage kernel_image(const PrimeMatrix& A);

Subspace subspace_span(PrimeField field, int ambient, const std::vector<Vec>& vectors);
Subspace subspace_sum(const Subspace& U, const Subspace& V);
bool member(const Vec& v, const Subspace& U);

// Solve A X = B for all columns at once; nothing when any column is
// inconsistent. Free variables are 0, so the solution is deterministic.
std::optional<PrimeMatrix> solve_right(const PrimeMatrix& A, const PrimeMatrix& B);
// Solve X A = B (via transposition).
std::optional<PrimeMatrix> solve_left(const PrimeMatrix& A, const PrimeMatrix& B);
// Inverse of a square invertible matrix; throws std::invalid_argument otherwise.
PrimeMatrix inverse(const PrimeMatrix& A);

int rank(const PrimeMatrix& A);

}  // namespace exactla
