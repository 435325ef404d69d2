#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace domeheat {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Thrown when an iterative solver exhausts its iteration budget.
struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, double rel_residual, int iterations)
      : std::runtime_error(what), rel_residual(rel_residual), iterations(iterations) {}
  double rel_residual;
  int iterations;
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row; duplicate triplets are summed on compression.
struct SparseMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_offsets;  // size n_rows + 1
  std::vector<int> col_indices;
  std::vector<double> values;

  static SparseMatrix from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);

  int nnz() const { return static_cast<int>(values.size()); }
  double coeff(int row, int col) const;  // 0 if the entry is absent
  bool is_symmetric(double tol) const;
};

Vector spmv(const SparseMatrix& A, std::span<const double> x);

/// a*A + b*B on the merged sparsity pattern. Dimensions must agree.
SparseMatrix add_scaled(double a, const SparseMatrix& A, double b, const SparseMatrix& B);

/// Submatrix A(rows, cols). Index lists must be sorted, duplicate-free and in range.
SparseMatrix extract_submatrix(const SparseMatrix& A, std::span<const int> rows,
                               std::span<const int> cols);

Vector gather(std::span<const double> full, std::span<const int> idx);
void scatter(std::span<const double> vals, std::span<const int> idx, std::span<double> full);

struct CgResult {
  Vector x;
  int iterations = 0;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite A.
/// Converged when ||b - Ax||_2 <= rel_tol * ||b||_2. max_iter < 0 selects the
/// default budget of 10*n. Throws SolverFailure on a spent budget.
CgResult cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<const double> x0,
                  double rel_tol = 1e-10, int max_iter = -1);

/// MatrixMarket coordinate-format dump for external inspection.
std::string to_matrix_market(const SparseMatrix& A);

}  // namespace domeheat
