#include "domeheat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace domeheat {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SparseMatrix SparseMatrix::from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets) {
  if (n_rows < 0 || n_cols < 0) throw std::invalid_argument("from_triplets: negative dimension");
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw std::invalid_argument("from_triplets: index out of range");
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.col_indices.reserve(triplets.size());
  m.values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const int r = triplets[k].row;
    const int c = triplets[k].col;
    double v = 0.0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      v += triplets[k].value;
      ++k;
    }
    m.col_indices.push_back(c);
    m.values.push_back(v);
    m.row_offsets[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.values.size());
  }
  // fill gaps for empty rows
  for (int r = 1; r <= n_rows; ++r)
    m.row_offsets[r] = std::max(m.row_offsets[r], m.row_offsets[r - 1]);
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

double SparseMatrix::coeff(int row, int col) const {
  if (row < 0 || row >= n_rows || col < 0 || col >= n_cols)
    throw std::out_of_range("coeff: index out of range");
  for (int k = row_offsets[row]; k < row_offsets[row + 1]; ++k)
    if (col_indices[k] == col) return values[k];
  return 0.0;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (n_rows != n_cols) return false;
  for (int r = 0; r < n_rows; ++r)
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      if (std::abs(values[k] - coeff(col_indices[k], r)) > tol) return false;
  return true;
}

Vector spmv(const SparseMatrix& A, std::span<const double> x) {
  if (static_cast<int>(x.size()) != A.n_cols) throw std::invalid_argument("spmv: size mismatch");
  Vector y(static_cast<std::size_t>(A.n_rows), 0.0);
  for (int r = 0; r < A.n_rows; ++r) {
    double s = 0.0;
    for (int k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k)
      s += A.values[k] * x[A.col_indices[k]];
    y[r] = s;
  }
  return y;
}

SparseMatrix add_scaled(double a, const SparseMatrix& A, double b, const SparseMatrix& B) {
  if (A.n_rows != B.n_rows || A.n_cols != B.n_cols)
    throw std::invalid_argument("add_scaled: dimension mismatch");
  SparseMatrix m;
  m.n_rows = A.n_rows;
  m.n_cols = A.n_cols;
  m.row_offsets.assign(static_cast<std::size_t>(A.n_rows) + 1, 0);
  m.col_indices.reserve(A.col_indices.size() + B.col_indices.size());
  m.values.reserve(A.values.size() + B.values.size());
  for (int r = 0; r < A.n_rows; ++r) {
    int ka = A.row_offsets[r], kb = B.row_offsets[r];
    const int ea = A.row_offsets[r + 1], eb = B.row_offsets[r + 1];
    while (ka < ea || kb < eb) {
      int col;
      double v = 0.0;
      if (kb >= eb || (ka < ea && A.col_indices[ka] < B.col_indices[kb])) {
        col = A.col_indices[ka];
        v = a * A.values[ka++];
      } else if (ka >= ea || B.col_indices[kb] < A.col_indices[ka]) {
        col = B.col_indices[kb];
        v = b * B.values[kb++];
      } else {
        col = A.col_indices[ka];
        v = a * A.values[ka++] + b * B.values[kb++];
      }
      m.col_indices.push_back(col);
      m.values.push_back(v);
    }
    m.row_offsets[r + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

SparseMatrix extract_submatrix(const SparseMatrix& A, std::span<const int> rows,
                               std::span<const int> cols) {
  std::vector<int> col_pos(static_cast<std::size_t>(A.n_cols), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= A.n_cols)
      throw std::invalid_argument("extract_submatrix: column out of range");
    col_pos[cols[j]] = static_cast<int>(j);
  }
  SparseMatrix m;
  m.n_rows = static_cast<int>(rows.size());
  m.n_cols = static_cast<int>(cols.size());
  m.row_offsets.assign(rows.size() + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= A.n_rows) throw std::invalid_argument("extract_submatrix: row out of range");
    for (int k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k) {
      const int j = col_pos[A.col_indices[k]];
      if (j >= 0) {
        m.col_indices.push_back(j);
        m.values.push_back(A.values[k]);
      }
    }
    m.row_offsets[i + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

Vector gather(std::span<const double> full, std::span<const int> idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = full[idx[i]];
  return out;
}

void scatter(std::span<const double> vals, std::span<const int> idx, std::span<double> full) {
  if (vals.size() != idx.size()) throw std::invalid_argument("scatter: size mismatch");
  for (std::size_t i = 0; i < idx.size(); ++i) full[idx[i]] = vals[i];
}

CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
                  double rel_tol, int max_iter) {
  const int n = A.n_rows;
  if (A.n_cols != n) throw std::invalid_argument("cg_solve: matrix not square");
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("cg_solve: size mismatch");
  if (rel_tol <= 0.0) throw std::invalid_argument("cg_solve: rel_tol must be positive");
  if (max_iter < 0) max_iter = 10 * n;

  Vector x(x0.begin(), x0.end());
  const double bnorm = norm2(b);
  if (bnorm == 0.0) return {Vector(static_cast<std::size_t>(n), 0.0), 0};

  Vector inv_diag(static_cast<std::size_t>(n), 1.0);
  for (int r = 0; r < n; ++r) {
    const double d = A.coeff(r, r);
    if (d > 0.0) inv_diag[r] = 1.0 / d;
  }

  Vector r = spmv(A, x);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rnorm = norm2(r);
  if (rnorm <= rel_tol * bnorm) return {std::move(x), 0};

  Vector z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  Vector p = z;
  double rho = dot(r, z);

  for (int it = 1; it <= max_iter; ++it) {
    const Vector q = spmv(A, p);
    const double pq = dot(p, q);
    if (pq <= 0.0)
      throw SolverFailure("cg_solve: matrix is not positive definite", rnorm / bnorm, it);
    const double alpha = rho / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    rnorm = norm2(r);
    if (rnorm <= rel_tol * bnorm) return {std::move(x), it};
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rho_new = dot(r, z);
    const double beta = rho_new / rho;
    rho = rho_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverFailure("cg_solve: no convergence within " + std::to_string(max_iter) +
                          " iterations, relative residual " + std::to_string(rnorm / bnorm),
                      rnorm / bnorm, max_iter);
}

std::string to_matrix_market(const SparseMatrix& A) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << A.n_rows << ' ' << A.n_cols << ' ' << A.nnz() << '\n';
  char buf[64];
  for (int r = 0; r < A.n_rows; ++r)
    for (int k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, A.col_indices[k] + 1, A.values[k]);
      os << buf;
    }
  return os.str();
}

}  // namespace domeheat
