#pragma once

#include <vector>

#include "ncvar/row_contraction.hpp"

namespace ncvar
{

/// Matrix of K_{T,r} or K_{J,T}: C^m -> (Fock or N) (x) D_T, rows idx(alpha) * d_T + s.
struct KernelMatrix
{
    Matrix matrix;
    double r = 1.0;
    Matrix Delta;           ///< Delta_{T,r}, m x m
    Matrix defect_basis;    ///< m x d_T, columns span range(Delta_{T,r})
    double tail_bound = 0.0; ///< ||Phi_r^{d+1}(I)||
    bool constrained = false;
    Eigen::Index outer_dim = 0; ///< dim of the Fock space or of N
    int degree = 0;          ///< truncation degree d

    Eigen::Index d_T() const { return defect_basis.cols(); }
};

/// K_{T,r} h = sum_{|alpha| <= d} e_alpha (x) r^|alpha| Delta_{T,r} T_alpha^* h.
KernelMatrix poisson_kernel(const RowContraction& t, const TruncatedFockSpace& space, double r = 1.0);

/// K_{J,T} = (N^* (x) I) K_T. Throws when the constraint residual exceeds 1e-8.
/// kt_sub receives ||(P_M (x) I) K_T||.
KernelMatrix constrained_poisson_kernel(const RowContraction& t, const ConstrainedSubspace& sub,
                                        double* kt_sub = nullptr);

/// ||K^*K - (I - Q)||.
double kernel_gram_residual(const KernelMatrix& k, const Matrix& q);

/// ||P_{deg <= d-1}(K T_i^* - (S_i^* (x) I) K)|| per i, for an unconstrained kernel.
std::vector<double> verify_intertwining(const RowContraction& t, const TruncatedFockSpace& space,
                                        const KernelMatrix& k);

/// ||P_{deg <= d-1}(K T_i^* - (B_i^* (x) I) K)|| per i, rows lifted to the Fock space.
std::vector<double> verify_intertwining(const RowContraction& t, const ConstrainedSubspace& sub,
                                        const KernelMatrix& k);

} // namespace ncvar
