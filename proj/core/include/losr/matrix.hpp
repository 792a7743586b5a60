#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace losr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

// Kronecker product with a's indices major.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor(const std::vector<CMatrix>& factors);

// Trace over the factors not listed in `keep`; kept factors stay in their
// original relative order. Empty `keep` yields the 1x1 matrix [Tr m].
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Transpose the indices of one tensor factor. Involutive.
CMatrix partial_transpose(const CMatrix& m, const std::vector<int>& dims,
                          int factor);

// Zero every entry that is off-diagonal in the given factor (computational
// basis). Projects onto the operators that treat that factor classically.
CMatrix dephase_factor(const CMatrix& m, const std::vector<int>& dims,
                       int factor);

// Simultaneous row/column factor permutation of a square matrix: output
// factor k is input factor perm[k].
CMatrix permute_factors(const CMatrix& m, const std::vector<int>& dims,
                        const std::vector<int>& perm);

// Permutation matrix P with P|i_{perm[0]}, i_{perm[1]}, ...> ordering:
// P m P^T = permute_factors(m, dims, perm).
CMatrix factor_perm_matrix(const std::vector<int>& dims,
                           const std::vector<int>& perm);

// Independent row and column factor reindexing for rectangular maps.
CMatrix reindex(const CMatrix& m, const std::vector<int>& row_dims,
                const std::vector<int>& row_perm,
                const std::vector<int>& col_dims,
                const std::vector<int>& col_perm);

// Eigenvalues of a Hermitian matrix, ascending. Throws on non-Hermitian
// input (checked against tol).
std::vector<double> herm_eigvals(const CMatrix& m, double tol = kDefaultTol);
double min_eigval(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kDefaultTol);
double frob_dist(const CMatrix& a, const CMatrix& b);

// Nearest positive semidefinite matrix (negative eigenvalues clipped).
CMatrix proj_psd(const CMatrix& m);

CMatrix identity(int d);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// Generalized Paulis: shift X|j> = |j+1 mod d>, clock Z|j> = w^j|j> with
// w = exp(2*pi*i/d).
CMatrix shift_op(int d);
CMatrix clock_op(int d);

CVector basis_ket(int j, int d);
// sum_i |ii> / sqrt(d)
CVector max_entangled_ket(int d);
CMatrix proj(const CVector& v);

CVector random_pure_ket(int d, std::mt19937_64& rng);
CMatrix random_density(int d, std::mt19937_64& rng);
CMatrix random_hermitian(int d, std::mt19937_64& rng);
// Columns orthonormal; requires rows >= cols.
CMatrix random_isometry(int rows, int cols, std::mt19937_64& rng);

}  // namespace losr
