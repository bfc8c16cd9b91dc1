#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncvar/poisson.hpp"

namespace ncvar
{

/// Matrix of Theta_T or Theta_{J,T}: (outer (x) D_{T*}) -> (outer (x) D_T), where
/// outer is the truncated Fock space or N in N_basis coordinates.
struct CharFn
{
    Matrix matrix;
    /// Coefficient blocks theta_(alpha), d_T x d_{T*}, keyed by word; for the
    /// constrained function these are the Fock coefficients of Theta_{J,T}(1 (x) k).
    std::map<Word, Matrix> fourier;
    bool fourier_available = true;
    bool constrained = false;
    std::string provenance; ///< "neumann-series" or "compression"
    DefectData defect;
    Eigen::Index outer_dim = 0;
    int degree = 0;
    std::vector<std::string> warnings;

    Eigen::Index d_T() const { return defect.d_T(); }
    Eigen::Index d_Tstar() const { return defect.d_Tstar(); }
};

/// Theta_T = -I (x) T + (I (x) Delta_T)(sum_{k<=d} X^k)[R_1 (x) I, ..., R_n (x) I](I (x) Delta_{T*})
/// with X = sum_i R_i (x) T_i^*, in defect-basis coordinates.
CharFn characteristic_function(const RowContraction& t, const TruncatedFockSpace& space);

struct ConstrainedCharFnChecks
{
    double constraint = 0.0;      ///< max generator residual of T
    double co_invariance = 0.0;   ///< ||(P_M (x) I) Theta_T^* (N (x) I)||
    std::optional<double> w_series; ///< distance to the W_i Neumann series (graded, nonzero ideals)
};

/// Theta_{J,T} = (N^* (x) I) Theta_T (N (x) I). Throws when the constraint residual exceeds 1e-8.
CharFn constrained_characteristic_function(const RowContraction& t, const ConstrainedSubspace& sub,
                                           ConstrainedCharFnChecks* checks = nullptr);

/// The finite W_i Neumann series in N coordinates (graded ideals only).
Matrix w_series_characteristic_function(const RowContraction& t, const ConstrainedSubspace& sub, const DefectData& def);

/// ||P_{deg <= d-1}(Theta (B_i (x) I) - (B_i (x) I) Theta)||, maximized over i.
double multi_analyticity_residual(const CharFn& theta, const ConstrainedSubspace& sub);

/// ||Theta - sum_alpha W_alpha (x) theta_(alpha)|| with W_alpha e_beta = P_N e_{beta alpha}.
double fourier_reconstruction_residual(const CharFn& theta, const ConstrainedSubspace& sub);

/// ||I - Theta Theta^* - K K^*||.
double factorization_defect(const CharFn& theta, const KernelMatrix& k);

struct DeltaClassification
{
    std::optional<Matrix> Delta_JT;     ///< (I - Theta^*Theta)^{1/2}
    double truncated_projection_residual = 0.0; ///< ||(Theta^*Theta)^2 - Theta^*Theta|| at truncation
    std::optional<double> limit_projection_residual; ///< ||Q - Q^2||, equal to the untruncated residual
    bool inner = false;
    bool outer = false;
    Eigen::Index rank_deficiency = 0;   ///< eigenvalues of Theta Theta^* at or below the rank cutoff
    double rank_cutoff = 0.0;
};

/// Inner: projection residual < 1e-8, computed from the limit Q when it is supplied.
/// Outer: no eigenvalue of Theta Theta^* at or below 10 * tail_bound + 1e-8.
DeltaClassification delta_and_classify(const CharFn& theta, double tail_bound, const std::optional<Matrix>& q,
                                       bool compute_delta = true);

/// Delta_{J,T} = I - Theta^*(I + (I - Theta Theta^*)^{1/2})^{-1} Theta. Directions with
/// 1 - sigma^2 <= rank_tol are sent to 0.
Matrix model_defect(const Matrix& theta, double rank_tol = 0.0);

/// ker(I - K^*K) = {0} with eigenvalues at or below 10 * tail_bound + 1e-8 treated as zero.
bool kernel_criterion_outer(const KernelMatrix& k);

/// Theta_{J_c,T}(z) in defect bases; T must commute.
Matrix eval_commutative(const RowContraction& t, const std::vector<Complex>& z);

/// sum_{alpha} z^alpha theta_(alpha) with z^alpha = prod z_{letters}.
Matrix fourier_sum(const CharFn& theta, const std::vector<Complex>& z);

/// Ascending singular values of a Fourier block, empty if the word is absent.
RealVector fourier_singular_values(const CharFn& theta, const Word& w);

struct SpectrumComparison
{
    bool match = true;
    double max_difference = 0.0;
    std::optional<Word> first_mismatch;
};

/// Necessary condition for coincidence: equal singular values of every Fourier block.
SpectrumComparison compare_fourier_spectra(const CharFn& a, const CharFn& b, double tol = 1e-8);

} // namespace ncvar
