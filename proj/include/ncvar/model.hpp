#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncvar/charfn.hpp"

namespace ncvar
{

struct ModelOptions
{
    bool compute_delta = true;   ///< form Delta_{J,T} and run the checks that need it
    double rank_tol = 1e-10;     ///< cutoff on 1 - sigma^2 for the model space
};

/// Model space H_{J,T} = K_{J,T} minus {Theta f + Delta f}, in ambient coordinates
/// (N (x) D_T) + (N (x) D_{T*}) of sizes a and b.
struct ModelData
{
    Eigen::Index a = 0;
    Eigen::Index b = 0;
    Eigen::Index d_T = 0;
    Eigen::Index d_Tstar = 0;
    Eigen::Index K_space_dim = 0;     ///< a + rank(Delta_{J,T})
    Matrix H_basis;                   ///< (a + b) x dim H, orthonormal columns
    Matrix X_H;                       ///< first component of H_basis (P_{N (x) D_T} restricted to H)
    RealVector sigma2;                ///< eigenvalues of Theta Theta^*, ascending
    Matrix sigma_vectors;             ///< matching eigenvectors
    std::optional<Matrix> Delta_JT;
    bool pure_branch = false;
    Matrix H_pure;                    ///< a x dim, basis of (N (x) D_T) minus range(Theta)
    std::vector<Matrix> Tt;           ///< model operators on H (general branch)
    std::vector<Matrix> Tt_pure;      ///< compressions P_H (B_i (x) I)|_H on H_pure
    Matrix Gamma;                     ///< dim H x m
    std::map<std::string, double> residuals;
    std::vector<std::string> warnings;

    Eigen::Index dim() const { return H_basis.cols(); }
};

/// Builds H_{J,T}, the embedding checks and, for pure T, the space H_pure.
/// Throws when classification says T is not c.n.c.
ModelData build_model(const ConstrainedSubspace& sub, const CharFn& theta, const Classification& cls,
                      const ModelOptions& opts = {});

struct ModelOperatorsResult
{
    std::vector<Matrix> ops;          ///< T_i on H from (P|_H) T_i^* = (B_i^* (x) I)(P|_H)
    double def_residual = 0.0;
    double min_singular_value = 0.0;  ///< of the restricted P|_H used in the solve
    bool valid_rows_only = true;      ///< solved on degrees <= d-1 (else on all rows)
    std::vector<Matrix> pure_ops;     ///< the same equation on H_pure with the inclusion map
    std::optional<double> pure_agreement;   ///< ||T^pure* D - D T^*||, D = P|_H in these bases
    std::optional<double> compression_deviation; ///< ||T^pure - P_H (B (x) I)|_H||
};

/// Solves the defining equation of the model operators by least squares. Throws when
/// P|_H is not injective.
ModelOperatorsResult model_operators(const ConstrainedSubspace& sub, const ModelData& model);

struct GammaResult
{
    Matrix Gamma;                    ///< dim H x m
    double ga_residual = 0.0;        ///< ||Gamma K^* - P_H(. + 0)||
    double kstar_p = 0.0;            ///< max_g | ||K^* g|| - ||P_H(g + 0)|| |
    double pgk = 0.0;                ///< ||P_{N (x) D_T} Gamma - K||
    double isometry = 0.0;           ///< ||Gamma^* Gamma - I||
    double coisometry = 0.0;         ///< ||Gamma Gamma^* - I||
};

/// Gamma(K^* g) = P_H(g + 0). Throws when K is not injective.
GammaResult model_unitary(const KernelMatrix& k, const ModelData& model);

/// build_model, model_operators and model_unitary together; fills Tt, Tt_pure,
/// Gamma and the residual table.
ModelData build_full_model(const RowContraction& t, const ConstrainedSubspace& sub, const CharFn& theta,
                           const KernelMatrix& k, const Classification& cls, const ModelOptions& opts = {});

/// max_i ||Gamma T_i - model_i Gamma||.
double model_intertwining_residual(const RowContraction& t, const Matrix& gamma, const std::vector<Matrix>& model_ops);

struct CoincidenceWitness
{
    Matrix tau;            ///< D_T -> D_T'
    Matrix tau_star;       ///< D_{T*} -> D_{T'*}
    double residual = 0.0; ///< ||(I (x) tau) Theta - Theta' (I (x) tau_star)||
    double unitarity = 0.0; ///< max of the unitarity defects of tau and tau_star
};

/// tau = U|_{D_T}, tau_star = (U + ... + U)|_{D_{T*}} for T' = U T U^*.
CoincidenceWitness coincidence_from_unitary(const RowContraction& t, const RowContraction& t_prime, const Matrix& u,
                                            const CharFn& theta, const CharFn& theta_prime);

struct EquivalenceReport
{
    double subspace_angle = 0.0;        ///< sine of the largest principal angle between U_model H and H'
    double model_intertwining = 0.0;    ///< max_i ||Omega T_i^* - T_i'^* Omega||
    Matrix intertwiner;                 ///< W = Gamma'^* Omega Gamma on C^m
    double intertwiner_residual = 0.0;  ///< max_i ||W T_i - T_i' W||
    double intertwiner_unitarity = 0.0; ///< ||W^* W - I||
    std::optional<double> phase;        ///< arg tr(U^* W) when U is supplied
    std::optional<double> distance_to_u; ///< ||W - e^{i phase} U||
};

/// Builds U_model = (I (x) tau) + (I (x) tau_star) on K, transports H and the model
/// operators, and returns the induced unitary C^m -> C^m.
EquivalenceReport verify_coincidence_implies_equivalence(const RowContraction& t, const RowContraction& t_prime,
                                                         const CoincidenceWitness& witness, const ModelData& model,
                                                         const ModelData& model_prime,
                                                         const std::optional<Matrix>& u = std::nullopt);

} // namespace ncvar
