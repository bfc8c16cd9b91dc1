#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ncvar
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Every operator in the library is a dense complex matrix in explicit bases.
using OperatorMatrix = Matrix;

/// Raised for violated preconditions (bad indices, mismatched sizes, bad input data).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Spectral norm when the smaller side is at most 256, otherwise the Frobenius
/// norm. Always an upper bound on the spectral norm; used for residual checks.
double residual_norm(const Matrix& a);

/// Hermitian part (A + A*) / 2.
Matrix hermitian_part(const Matrix& a);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen
{
    RealVector values;
    Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& h);

/// PSD square root of a Hermitian matrix; negative eigenvalues are clamped to 0.
Matrix psd_sqrt(const Matrix& h);

/// Orthonormal basis of range(A) from the SVD, keeping singular values above
/// rel_tol * sigma_max. Returns rows x 0 when A vanishes.
Matrix range_basis(const Matrix& a, double rel_tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of span(q) in C^dim; q must
/// have orthonormal columns.
Matrix complement_basis(const Matrix& q, Eigen::Index dim);

/// (A kron B) with A as the major (outer) index.
Matrix kron(const Matrix& a, const Matrix& b);

/// (A kron I_inner) V without forming the Kronecker product.
Matrix apply_outer(const Matrix& a, const Matrix& v, Eigen::Index inner);

/// (I_outer kron B) V without forming the Kronecker product.
Matrix apply_inner(const Matrix& b, const Matrix& v);

/// Rows of v listed in `rows`.
Matrix select_rows(const Matrix& v, const std::vector<Eigen::Index>& rows);

/// Largest principal-angle sine between the column spans of two orthonormal bases
/// of equal dimension; 1 if the dimensions differ.
double subspace_distance(const Matrix& q1, const Matrix& q2);

} // namespace ncvar
