#pragma once

#include <string>
#include <vector>

#include "ncvar/ideal.hpp"

namespace ncvar
{

/// The tuple T = [T_1, ..., T_n] of m x m matrices.
class RowContraction
{
public:
    explicit RowContraction(std::vector<OperatorMatrix> ops);

    int n() const { return static_cast<int>(ops_.size()); }
    Eigen::Index m() const { return ops_.front().rows(); }
    const OperatorMatrix& operator[](int i) const { return ops_[static_cast<std::size_t>(i)]; }
    const std::vector<OperatorMatrix>& ops() const { return ops_; }

    /// The m x nm row matrix [T_1 ... T_n].
    Matrix row() const;
    /// sum_i T_i X T_i^*.
    Matrix phi(const Matrix& x) const;
    /// T_i -> c T_i.
    RowContraction scaled(Complex c) const;
    /// T_i -> U T_i U^*.
    RowContraction conjugated(const Matrix& u) const;

private:
    std::vector<OperatorMatrix> ops_;
};

struct ValidationReport
{
    double min_defect_eigenvalue = 0.0;
    bool pass = false;
};

/// Contractivity test: min eig(I - sum T_i T_i^*) >= -tol. Never throws on
/// non-contractions.
ValidationReport validate(const RowContraction& t, double tol = 1e-10);

struct DefectData
{
    Matrix Delta_T;         ///< m x m
    Matrix Delta_Tstar;     ///< nm x nm
    Matrix D_T_basis;       ///< m x d_T
    Matrix D_Tstar_basis;   ///< nm x d_{T*}
    double rank_tol = 1e-10;
    std::vector<std::string> warnings;

    Eigen::Index d_T() const { return D_T_basis.cols(); }
    Eigen::Index d_Tstar() const { return D_Tstar_basis.cols(); }
};

/// Defect operators of the radially scaled tuple rT. Basis vectors are the
/// eigenvectors of the squared defects with eigenvalue above rank_tol.
DefectData defects(const RowContraction& t, double r = 1.0, double rank_tol = 1e-10);

enum class TriState
{
    yes,
    no,
    undetermined
};

std::string to_string(TriState s);

struct Classification
{
    TriState is_pure = TriState::undetermined;
    TriState is_cnc = TriState::undetermined;
    Matrix Q;               ///< last iterate of Q_{k+1} = Phi(Q_k), Q_0 = I
    int k_used = 0;
    double rho = 0.0;       ///< ||sum T_i T_i^*||
    bool converged = false;
};

/// Purity and complete non-coisometry from the decreasing sequence Phi^k(I).
/// Q_k decreases, so ||Q_k|| < tol certifies purity and lambda_max(Q_k) < 1 - tol
/// certifies c.n.c. at any k; negative answers need convergence. A negative
/// tol_cnc means tol_cnc = tol.
Classification classify(const RowContraction& t, int k_max = 100000, double tol = 1e-9, double tol_cnc = -1.0);

/// Phi^k(I).
Matrix phi_power_identity(const RowContraction& t, int k);

/// max over generators of ||p(T_1, ..., T_n)||.
double constraint_check(const RowContraction& t, const PolyIdealSpec& spec);

} // namespace ncvar
