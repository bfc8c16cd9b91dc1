#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncvar/fock.hpp"

namespace ncvar
{

/// Noncommutative polynomial: finitely many words with nonzero coefficients.
class NCPoly
{
public:
    NCPoly() = default;
    /// Duplicate words are summed; zero coefficients are dropped.
    explicit NCPoly(const std::vector<std::pair<Word, Complex>>& terms);

    const std::map<Word, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    bool homogeneous() const;
    /// Largest letter used (0 for constants).
    int max_letter() const;

private:
    std::map<Word, Complex> terms_;
};

enum class IdealKind
{
    zero,
    commutative,
    q_commuting,
    custom
};

std::string to_string(IdealKind kind);
IdealKind ideal_kind_from_string(const std::string& text);

/// q-commutation parameter for a pair i < j: the relation X_i X_j = value * X_j X_i.
struct QParameter
{
    int i;
    int j;
    Complex value;
};

/// Generators of a two-sided ideal J of polynomials in S_1..S_n.
struct PolyIdealSpec
{
    int n = 1;
    IdealKind kind = IdealKind::zero;
    std::vector<QParameter> q;        // q_commuting only; missing pairs default to 1
    std::vector<NCPoly> custom;       // custom only

    static PolyIdealSpec zero(int n) { return {n, IdealKind::zero, {}, {}}; }
    static PolyIdealSpec commutative(int n) { return {n, IdealKind::commutative, {}, {}}; }
    /// Every pair i < j gets the same parameter.
    static PolyIdealSpec q_commuting(int n, Complex q);

    /// The expanded generator list: X_iX_j - X_jX_i, X_iX_j - q X_jX_i, or the custom list.
    std::vector<NCPoly> generators() const;
};

/// Truncated N_J^(d) = F^2_{<=d} minus the span of S_alpha p e_beta over generators p.
struct ConstrainedSubspace
{
    TruncatedFockSpace space;
    PolyIdealSpec spec;
    Matrix N_basis;               ///< dim x dim N, orthonormal columns
    Matrix M_basis;               ///< dim x dim M, orthonormal columns
    Matrix P_N;                   ///< N_basis N_basis^*
    bool graded = true;           ///< all generators homogeneous
    bool vacuum_in_N = true;
    std::vector<int> N_degrees;   ///< tensor degree of each N_basis column (graded only, else -1)

    Eigen::Index dim_N() const { return N_basis.cols(); }
    Eigen::Index dim_M() const { return M_basis.cols(); }

    /// Coordinates of the vacuum in N_basis; empty if the vacuum is not in N.
    std::optional<Vector> vacuum_coordinates() const;

    /// Rows of (N_basis kron I_inner) X lying in tensor degree <= max_degree.
    Matrix lift_valid(const Matrix& x, Eigen::Index inner, int max_degree) const;
};

/// Spanning vectors S_alpha p e_beta, |alpha| + deg p + |beta| <= d, as columns.
Matrix ideal_spanning_vectors(const PolyIdealSpec& spec, const TruncatedFockSpace& space);

ConstrainedSubspace ideal_subspace(const PolyIdealSpec& spec, const TruncatedFockSpace& space,
                                   double rank_tol = 1e-10);

enum class Side
{
    left,
    right
};

/// B_i = P_N S_i|_N (left) or W_i = P_N R_i|_N (right) in N_basis coordinates.
OperatorMatrix constrained_creation(const ConstrainedSubspace& sub, int i, Side side);

/// sum_alpha c_alpha X_alpha with X_{g_0} = I.
OperatorMatrix apply_poly_to_tuple(const NCPoly& poly, const std::vector<OperatorMatrix>& x);

} // namespace ncvar
