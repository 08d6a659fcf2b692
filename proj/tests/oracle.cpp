#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

namespace {

int rows_of(const Mat& m) { return static_cast<int>(m.size()); }
int cols_of(const Mat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

// Basic row reduction, counting the rank. Operates on a copy.
int plain_rank(int p, Mat m) {
  int r = 0;
  int rows = rows_of(m), cols = cols_of(m);
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    // scale pivot row to 1
    int inv = 1;
    for (int t = 1; t < p; ++t)
      if (m[r][c] * t % p == 1) {
        inv = t;
        break;
      }
    for (int j = 0; j < cols; ++j) m[r][j] = m[r][j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      int f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p * p) % p;
    }
    ++r;
  }
  return r;
}

// Solvability of m . x = rhs.
bool plain_solvable(int p, Mat m, std::vector<int> rhs) {
  int rows = rows_of(m), cols = cols_of(m);
  for (int i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  int rank_a = plain_rank(p, Mat(m.begin(), m.end()));
  // rank of [A | b] computed on the augmented copy; compare against rank(A)
  Mat a_only(rows, std::vector<int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a_only[i][j] = m[i][j];
  return plain_rank(p, a_only) == rank_a;
}

// The commuting system for Hom(M, N): unknowns are the entries of a
// (dim N x dim M) matrix, row-major.
Mat commuting_system(int p, const Mat& xm, const Mat& xn) {
  int dm = rows_of(xm), dn = rows_of(xn);
  Mat sys(dn * dm, std::vector<int>(dn * dm, 0));
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dm; ++j) {
      int row = i * dm + j;
      for (int k = 0; k < dm; ++k)
        sys[row][i * dm + k] = (sys[row][i * dm + k] + xm[k][j]) % p;
      for (int k = 0; k < dn; ++k)
        sys[row][k * dm + j] = ((sys[row][k * dm + j] - xn[i][k]) % p + p) % p;
    }
  return sys;
}

std::vector<Mat> hom_basis_plain(int p, const Mat& xm, const Mat& xn) {
  int dm = rows_of(xm), dn = rows_of(xn);
  Mat sys = commuting_system(p, xm, xn);
  // nullspace via full reduction
  int unknowns = dn * dm;
  int rows = rows_of(sys);
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < unknowns && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (sys[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(sys[r], sys[piv]);
    int inv = 1;
    for (int t = 1; t < p; ++t)
      if (sys[r][c] * t % p == 1) {
        inv = t;
        break;
      }
    for (int j = 0; j < unknowns; ++j) sys[r][j] = sys[r][j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sys[i][c] == 0) continue;
      int f = sys[i][c];
      for (int j = 0; j < unknowns; ++j)
        sys[i][j] = ((sys[i][j] - f * sys[r][j]) % p + p * p) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(unknowns, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Mat> basis;
  for (int free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(unknowns, 0);
    v[free] = 1;
    for (size_t rr = 0; rr < pivot_col.size(); ++rr)
      v[pivot_col[rr]] = (p - sys[rr][free]) % p;
    basis.push_back(mat_from_flat(dn, dm, v));
  }
  return basis;
}

}  // namespace

Mat mat_mul(int p, const Mat& a, const Mat& b) {
  int n = rows_of(a), k = cols_of(a), m = cols_of(b);
  if (k != rows_of(b)) throw std::invalid_argument("oracle::mat_mul: shape mismatch");
  Mat out(n, std::vector<int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j) out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
    }
  return out;
}

bool mat_equal(const Mat& a, const Mat& b) { return a == b; }

Mat mat_from_flat(int rows, int cols, const std::vector<int>& flat) {
  Mat m(rows, std::vector<int>(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = flat[i * cols + j];
  return m;
}

int hom_dim_enumerate(int p, const Mat& xm, const Mat& xn) {
  int dm = rows_of(xm), dn = rows_of(xn);
  long long cells = static_cast<long long>(dm) * dn;
  double total = 1;
  for (long long i = 0; i < cells; ++i) {
    total *= p;
    if (total > (1 << 20)) throw std::invalid_argument("hom_dim_enumerate: too many matrices");
  }
  long long count = 0;
  std::vector<int> digits(cells, 0);
  while (true) {
    Mat a = mat_from_flat(dn, dm, digits);
    if (mat_equal(mat_mul(p, a, xm), mat_mul(p, xn, a))) ++count;
    // increment base-p counter
    long long pos = 0;
    while (pos < cells) {
      if (++digits[pos] < p) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == cells) break;
  }
  int dim = 0;
  long long c = count;
  while (c > 1) {
    if (c % p != 0) throw std::logic_error("hom_dim_enumerate: count is not a power of p");
    c /= p;
    ++dim;
  }
  return dim;
}

int hom_dim_gauss(int p, const Mat& xm, const Mat& xn) {
  int dm = rows_of(xm), dn = rows_of(xn);
  if (dm == 0 || dn == 0) return 0;
  return dn * dm - plain_rank(p, commuting_system(p, xm, xn));
}

int hom_dim(int p, const Mat& xm, const Mat& xn) {
  long long cells = static_cast<long long>(rows_of(xm)) * rows_of(xn);
  double total = 1;
  bool small = true;
  for (long long i = 0; i < cells; ++i) {
    total *= p;
    if (total > (1 << 20)) {
      small = false;
      break;
    }
  }
  return small ? hom_dim_enumerate(p, xm, xn) : hom_dim_gauss(p, xm, xn);
}

int phom_dim(int p, const Mat& xm, const Mat& xn, const Mat& xr) {
  int dm = rows_of(xm), dn = rows_of(xn);
  if (dm == 0 || dn == 0) return 0;
  std::vector<Mat> into_r = hom_basis_plain(p, xm, xr);
  std::vector<Mat> from_r = hom_basis_plain(p, xr, xn);
  Mat products;
  for (const Mat& b : from_r)
    for (const Mat& a : into_r) {
      Mat ba = mat_mul(p, b, a);
      std::vector<int> flat;
      for (const auto& row : ba) flat.insert(flat.end(), row.begin(), row.end());
      products.push_back(std::move(flat));
    }
  if (products.empty()) return 0;
  return plain_rank(p, products);
}

int sthom_dim(int p, const Mat& xm, const Mat& xn, const Mat& xr) {
  return hom_dim(p, xm, xn) - phom_dim(p, xm, xn, xr);
}

bool retraction_exists(int p, const Mat& a, const Mat& xe, const Mat& xy) {
  int de = rows_of(xe), dy = rows_of(xy);
  if (dy == 0) return true;
  // unknown r is dy x de; constraints: r a = id_Y and r xe = xy r.
  int unknowns = dy * de;
  Mat sys;
  std::vector<int> rhs;
  for (int i = 0; i < dy; ++i)
    for (int j = 0; j < dy; ++j) {
      std::vector<int> row(unknowns, 0);
      for (int k = 0; k < de; ++k) row[i * de + k] = a[k][j] % p;
      sys.push_back(std::move(row));
      rhs.push_back(i == j ? 1 : 0);
    }
  for (int i = 0; i < dy; ++i)
    for (int j = 0; j < de; ++j) {
      std::vector<int> row(unknowns, 0);
      for (int k = 0; k < de; ++k) row[i * de + k] = (row[i * de + k] + xe[k][j]) % p;
      for (int k = 0; k < dy; ++k)
        row[k * de + j] = ((row[k * de + j] - xy[i][k]) % p + p) % p;
      sys.push_back(std::move(row));
      rhs.push_back(0);
    }
  return plain_solvable(p, std::move(sys), std::move(rhs));
}

int ses_morphism_space_dim_f2(const Mat& a, const Mat& b, const Mat& c, const Mat& d,
                              const Mat& xa1, const Mat& xa2, const Mat& xa3, const Mat& xb1,
                              const Mat& xb2, const Mat& xb3) {
  const int d_a1 = rows_of(xa1), d_a2 = rows_of(xa2), d_a3 = rows_of(xa3);
  const int d_b1 = rows_of(xb1), d_b2 = rows_of(xb2), d_b3 = rows_of(xb3);
  int cells = d_b1 * d_a1 + d_b2 * d_a2 + d_b3 * d_a3;
  if (cells > 20) throw std::invalid_argument("ses_morphism_space_dim_f2: too large");
  long long count = 0;
  for (long long mask = 0; mask < (1ll << cells); ++mask) {
    std::vector<int> bits(cells);
    for (int i = 0; i < cells; ++i) bits[i] = (mask >> i) & 1;
    const int n1 = d_b1 * d_a1, n2 = d_b2 * d_a2;
    Mat f1 = mat_from_flat(d_b1, d_a1, std::vector<int>(bits.begin(), bits.begin() + n1));
    Mat f2 = mat_from_flat(d_b2, d_a2,
                           std::vector<int>(bits.begin() + n1, bits.begin() + n1 + n2));
    Mat f3 = mat_from_flat(d_b3, d_a3, std::vector<int>(bits.begin() + n1 + n2, bits.end()));
    bool linear = mat_equal(mat_mul(2, f1, xa1), mat_mul(2, xb1, f1)) &&
                  mat_equal(mat_mul(2, f2, xa2), mat_mul(2, xb2, f2)) &&
                  mat_equal(mat_mul(2, f3, xa3), mat_mul(2, xb3, f3));
    if (linear && mat_equal(mat_mul(2, c, f1), mat_mul(2, f2, a)) &&
        mat_equal(mat_mul(2, d, f2), mat_mul(2, f3, b)))
      ++count;
  }
  int dim = 0;
  while (count > 1) {
    count /= 2;
    ++dim;
  }
  return dim;
}

}  // namespace oracle
