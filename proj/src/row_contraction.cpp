#include "ncvar/row_contraction.hpp"

#include <cmath>
#include <sstream>

namespace ncvar
{

RowContraction::RowContraction(std::vector<OperatorMatrix> ops) : ops_(std::move(ops))
{
    if(ops_.empty()) throw Error("RowContraction: the tuple is empty");
    const Eigen::Index m = ops_.front().rows();
    if(m == 0) throw Error("RowContraction: matrices must be nonempty");
    for(std::size_t i = 0; i < ops_.size(); ++i)
        if(ops_[i].rows() != m || ops_[i].cols() != m)
            throw Error("RowContraction: T_" + std::to_string(i + 1) + " is not " + std::to_string(m) + "x" + std::to_string(m));
}

Matrix RowContraction::row() const
{
    Matrix r(m(), m() * n());
    for(int i = 0; i < n(); ++i) r.middleCols(i * m(), m()) = ops_[static_cast<std::size_t>(i)];
    return r;
}

Matrix RowContraction::phi(const Matrix& x) const
{
    Matrix out = Matrix::Zero(m(), m());
    for(const auto& ti : ops_) out += ti * x * ti.adjoint();
    return out;
}

RowContraction RowContraction::scaled(Complex c) const
{
    std::vector<OperatorMatrix> out;
    for(const auto& ti : ops_) out.push_back(c * ti);
    return RowContraction(std::move(out));
}

RowContraction RowContraction::conjugated(const Matrix& u) const
{
    std::vector<OperatorMatrix> out;
    for(const auto& ti : ops_) out.push_back(u * ti * u.adjoint());
    return RowContraction(std::move(out));
}

ValidationReport validate(const RowContraction& t, double tol)
{
    const Matrix defect = Matrix::Identity(t.m(), t.m()) - t.phi(Matrix::Identity(t.m(), t.m()));
    const auto eig = hermitian_eigen(defect);
    ValidationReport report;
    report.min_defect_eigenvalue = eig.values.minCoeff();
    report.pass = report.min_defect_eigenvalue >= -tol;
    return report;
}

namespace
{

struct DefectPart
{
    Matrix root;
    Matrix basis;
};

DefectPart defect_part(const Matrix& squared, double rank_tol, const std::string& name, std::vector<std::string>& warnings)
{
    const auto eig = hermitian_eigen(squared);
    const Eigen::Index dim = squared.rows();
    RealVector roots(dim);
    std::vector<Eigen::Index> keep;
    for(Eigen::Index k = 0; k < dim; ++k)
    {
        const double v = eig.values(k);
        roots(k) = std::sqrt(std::max(v, 0.0));
        if(v > rank_tol) keep.push_back(k);
        if(std::abs(v) >= 1e-12 && std::abs(v) <= 1e-8)
        {
            std::ostringstream os;
            os << name << ": eigenvalue " << v << " is close to the rank cutoff";
            warnings.push_back(os.str());
        }
    }
    DefectPart part;
    part.root = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    part.basis.resize(dim, static_cast<Eigen::Index>(keep.size()));
    // Largest eigenvalues first.
    for(std::size_t c = 0; c < keep.size(); ++c) part.basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[keep.size() - 1 - c]);
    return part;
}

} // namespace

DefectData defects(const RowContraction& t, double r, double rank_tol)
{
    if(!(r > 0.0 && r <= 1.0)) throw Error("defects: r must lie in (0, 1]");
    const Eigen::Index m = t.m();
    const Eigen::Index nm = m * t.n();
    const Matrix row = t.row() * r;
    DefectData out;
    out.rank_tol = rank_tol;
    auto dt = defect_part(Matrix::Identity(m, m) - row * row.adjoint(), rank_tol, "Delta_T^2", out.warnings);
    auto dts = defect_part(Matrix::Identity(nm, nm) - row.adjoint() * row, rank_tol, "Delta_T*^2", out.warnings);
    out.Delta_T = std::move(dt.root);
    out.D_T_basis = std::move(dt.basis);
    out.Delta_Tstar = std::move(dts.root);
    out.D_Tstar_basis = std::move(dts.basis);
    return out;
}

std::string to_string(TriState s)
{
    switch(s)
    {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    case TriState::undetermined: return "undetermined";
    }
    return "undetermined";
}

Classification classify(const RowContraction& t, int k_max, double tol, double tol_cnc)
{
    if(tol_cnc < 0.0) tol_cnc = tol;
    const Eigen::Index m = t.m();
    Classification c;
    c.Q = Matrix::Identity(m, m);
    c.rho = spectral_norm(t.phi(c.Q));
    double prev_diff = -1.0;
    for(int k = 0; k < k_max; ++k)
    {
        Matrix next = hermitian_part(t.phi(c.Q));
        const double diff = spectral_norm(next - c.Q);
        c.Q = std::move(next);
        c.k_used = k + 1;
        // Continue past the purity threshold until Q is a fixed point to working accuracy.
        if(spectral_norm(c.Q) < tol * 1e-2)
        {
            c.converged = true;
            break;
        }
        if(diff == 0.0)
        {
            c.converged = true;
            break;
        }
        // Geometric a-posteriori bound on the distance to the limit.
        if(prev_diff > 0.0)
        {
            const double ratio = diff / prev_diff;
            if(ratio < 1.0 && diff * ratio / (1.0 - ratio) < tol * 1e-2 && diff < tol)
            {
                c.converged = true;
                break;
            }
        }
        prev_diff = diff;
    }
    const double q_norm = spectral_norm(c.Q);
    const double q_top = hermitian_eigen(c.Q).values.maxCoeff();
    if(q_norm < tol)
        c.is_pure = TriState::yes;
    else
        c.is_pure = c.converged ? TriState::no : TriState::undetermined;
    if(q_top < 1.0 - tol_cnc)
        c.is_cnc = TriState::yes;
    else
        c.is_cnc = c.converged ? TriState::no : TriState::undetermined;
    return c;
}

Matrix phi_power_identity(const RowContraction& t, int k)
{
    Matrix q = Matrix::Identity(t.m(), t.m());
    for(int j = 0; j < k; ++j) q = hermitian_part(t.phi(q));
    return q;
}

double constraint_check(const RowContraction& t, const PolyIdealSpec& spec)
{
    if(spec.n != t.n()) throw Error("constraint_check: ideal has n=" + std::to_string(spec.n) + " but the tuple has n=" + std::to_string(t.n()));
    double worst = 0.0;
    for(const auto& p : spec.generators()) worst = std::max(worst, spectral_norm(apply_poly_to_tuple(p, t.ops())));
    return worst;
}

} // namespace ncvar
