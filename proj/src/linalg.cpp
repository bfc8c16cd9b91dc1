#include "ncvar/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ncvar
{

double spectral_norm(const Matrix& a)
{
    if(a.size() == 0) return 0.0;
    // Largest eigenvalue of the smaller Gram matrix.
    Matrix gram = a.rows() <= a.cols() ? Matrix(a * a.adjoint()) : Matrix(a.adjoint() * a);
    gram = hermitian_part(gram);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double residual_norm(const Matrix& a)
{
    if(a.size() == 0) return 0.0;
    if(std::min(a.rows(), a.cols()) <= 256) return spectral_norm(a);
    return a.norm();
}

Matrix hermitian_part(const Matrix& a)
{
    return (a + a.adjoint()) * 0.5;
}

HermitianEigen hermitian_eigen(const Matrix& h)
{
    if(h.rows() != h.cols()) throw Error("hermitian_eigen: matrix is not square");
    if(h.rows() == 0) return {RealVector(0), Matrix(0, 0)};
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    if(es.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& h)
{
    if(h.rows() == 0) return Matrix(0, 0);
    auto eig = hermitian_eigen(h);
    RealVector roots = eig.values.unaryExpr([](double x) { return std::sqrt(std::max(x, 0.0)); });
    return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix range_basis(const Matrix& a, double rel_tol)
{
    if(a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if(s.size() == 0 || s(0) <= 0.0) return Matrix(a.rows(), 0);
    Eigen::Index rank = 0;
    while(rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

Matrix complement_basis(const Matrix& q, Eigen::Index dim)
{
    if(q.rows() != dim) throw Error("complement_basis: dimension mismatch");
    if(q.cols() == 0) return Matrix::Identity(dim, dim);
    if(q.cols() == dim) return Matrix(dim, 0);
    Eigen::HouseholderQR<Matrix> qr(q);
    Matrix full = qr.householderQ() * Matrix::Identity(dim, dim);
    return full.rightCols(dim - q.cols());
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for(Eigen::Index i = 0; i < a.rows(); ++i)
        for(Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix apply_outer(const Matrix& a, const Matrix& v, Eigen::Index inner)
{
    const Eigen::Index outer = a.cols();
    if(inner < 0 || v.rows() != outer * inner) throw Error("apply_outer: dimension mismatch");
    const Eigen::Index ncols = v.cols();
    Matrix z(outer, inner * ncols);
    for(Eigen::Index c = 0; c < ncols; ++c)
        for(Eigen::Index x = 0; x < outer; ++x)
            for(Eigen::Index j = 0; j < inner; ++j) z(x, j + inner * c) = v(x * inner + j, c);
    Matrix r = a * z;
    Matrix out(a.rows() * inner, ncols);
    for(Eigen::Index c = 0; c < ncols; ++c)
        for(Eigen::Index x = 0; x < a.rows(); ++x)
            for(Eigen::Index j = 0; j < inner; ++j) out(x * inner + j, c) = r(x, j + inner * c);
    return out;
}

Matrix apply_inner(const Matrix& b, const Matrix& v)
{
    const Eigen::Index inner = b.cols();
    if(inner == 0) return Matrix::Zero(0, v.cols());
    if(v.rows() % inner != 0) throw Error("apply_inner: dimension mismatch");
    const Eigen::Index outer = v.rows() / inner;
    if(v.cols() == 0) return Matrix(outer * b.rows(), 0);
    Eigen::Map<const Matrix> m(v.data(), inner, outer * v.cols());
    Matrix r = b * m;
    return Eigen::Map<const Matrix>(r.data(), outer * b.rows(), v.cols());
}

Matrix select_rows(const Matrix& v, const std::vector<Eigen::Index>& rows)
{
    Matrix out(static_cast<Eigen::Index>(rows.size()), v.cols());
    for(std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = v.row(rows[k]);
    return out;
}

double subspace_distance(const Matrix& q1, const Matrix& q2)
{
    if(q1.cols() != q2.cols() || q1.rows() != q2.rows()) return 1.0;
    if(q1.cols() == 0) return 0.0;
    Matrix resid = q1 - q2 * (q2.adjoint() * q1);
    return std::min(1.0, spectral_norm(resid));
}

} // namespace ncvar
