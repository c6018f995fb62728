#pragma once

#include <vector>

namespace hmom {

/// Eigen-decomposition of a symmetric tridiagonal matrix.
/// diag has size n, offdiag size n-1. Returns ascending eigenvalues and,
/// per eigenvalue, the first component of the normalized eigenvector
/// (all that Golub-Welsch style quadrature needs).
struct TridiagEigen {
  std::vector<double> values;
  std::vector<double> first_components;
};
TridiagEigen tridiag_eigen(std::vector<double> diag, std::vector<double> offdiag);

/// Determinant via LU with partial pivoting. Matrix is row-major n x n,
/// destroyed in place.
double lu_determinant(std::vector<double>& a, int n);

/// Eigenvalues of a small dense symmetric matrix (row-major), ascending.
/// Cyclic Jacobi rotations; intended for n up to a few dozen.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// Solve A x = b in place by Gaussian elimination with partial pivoting.
/// Returns false if A is numerically singular.
bool solve_linear(std::vector<double> a, std::vector<double> b, int n,
                  std::vector<double>& x);

}  // namespace hmom
