#include "ncvar/model.hpp"

#include <cmath>

namespace ncvar
{

namespace
{

double smallest_singular_value(const Matrix& a)
{
    if(a.cols() == 0) return std::numeric_limits<double>::infinity();
    if(a.rows() < a.cols()) return 0.0;
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues().minCoeff();
}

Matrix stack(const Matrix& top, const Matrix& bottom)
{
    Matrix out(top.rows() + bottom.rows(), top.cols());
    out << top, bottom;
    return out;
}

double unitarity_defect(const Matrix& u)
{
    const Matrix id_c = Matrix::Identity(u.cols(), u.cols());
    const Matrix id_r = Matrix::Identity(u.rows(), u.rows());
    return std::max(residual_norm(u.adjoint() * u - id_c), residual_norm(u * u.adjoint() - id_r));
}

// Least-squares solution of (rows of L X) Y = rows of L (B_i^* (x) I) X for every i.
struct DefSolve
{
    std::vector<Matrix> adj_ops;
    double residual = 0.0;
    double min_sv = 0.0;
    bool valid_rows_only = true;
};

DefSolve solve_def(const ConstrainedSubspace& sub, const Matrix& x, Eigen::Index dt)
{
    DefSolve out;
    const int d = sub.space.d();
    auto lift = [&](const Matrix& v) { return out.valid_rows_only ? sub.lift_valid(v, dt, d - 1) : apply_outer(sub.N_basis, v, dt); };
    Matrix a = lift(x);
    out.min_sv = smallest_singular_value(a);
    if(out.min_sv <= 1e-8)
    {
        // A nilpotent truncation can leave the valid rows rank deficient; all rows are then exact.
        out.valid_rows_only = false;
        a = lift(x);
        out.min_sv = smallest_singular_value(a);
    }
    if(out.min_sv <= 1e-8)
        throw Error("model_operators: P|_H is not injective (smallest singular value " + std::to_string(out.min_sv) + ")");
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    for(int i = 1; i <= sub.space.n(); ++i)
    {
        const Matrix b_adj = constrained_creation(sub, i, Side::left).adjoint();
        const Matrix rhs = lift(apply_outer(b_adj, x, dt));
        Matrix y = qr.solve(rhs);
        out.residual = std::max(out.residual, residual_norm(a * y - rhs));
        out.adj_ops.push_back(std::move(y));
    }
    return out;
}

} // namespace

ModelData build_model(const ConstrainedSubspace& sub, const CharFn& theta, const Classification& cls, const ModelOptions& opts)
{
    if(cls.is_cnc == TriState::no) throw Error("build_model: T is not completely non-coisometric");
    if(theta.outer_dim != sub.dim_N()) throw Error("build_model: CharFn does not live on this subspace");
    ModelData md;
    const Matrix& th = theta.matrix;
    md.a = th.rows();
    md.b = th.cols();
    md.d_T = theta.d_T();
    md.d_Tstar = theta.d_Tstar();
    if(cls.is_cnc == TriState::undetermined) md.warnings.push_back("c.n.c. could not be certified");

    const auto eig = hermitian_eigen(th * th.adjoint());
    md.sigma2 = eig.values;
    md.sigma_vectors = eig.vectors;
    std::vector<Eigen::Index> keep, top;
    for(Eigen::Index s = 0; s < md.a; ++s)
        (1.0 - md.sigma2(s) > opts.rank_tol ? keep : top).push_back(s);
    const auto h = static_cast<Eigen::Index>(keep.size());

    // h_s = delta_s U_s + (-Theta^* U_s) is orthogonal to every Theta f + Delta f.
    Matrix u_keep(md.a, h);
    RealVector delta(h);
    for(Eigen::Index c = 0; c < h; ++c)
    {
        u_keep.col(c) = eig.vectors.col(keep[static_cast<std::size_t>(c)]);
        delta(c) = std::sqrt(1.0 - md.sigma2(keep[static_cast<std::size_t>(c)]));
    }
    md.X_H = u_keep * delta.cast<Complex>().asDiagonal();
    const Matrix y = -(th.adjoint() * u_keep);
    md.H_basis = stack(md.X_H, y);
    md.K_space_dim = md.a + (md.b - static_cast<Eigen::Index>(top.size()));
    md.residuals["H-orth"] = residual_norm(md.H_basis.adjoint() * md.H_basis - Matrix::Identity(h, h));
    md.residuals["dim"] = std::abs(static_cast<double>(md.K_space_dim - md.b - h));

    if(opts.compute_delta)
    {
        md.Delta_JT = model_defect(th, opts.rank_tol);
        const Matrix& dl = *md.Delta_JT;
        md.residuals["Phi-iso"] = residual_norm(th.adjoint() * th + dl * dl - Matrix::Identity(md.b, md.b));
        md.residuals["H-perp"] = residual_norm(md.X_H.adjoint() * th + y.adjoint() * dl);
        if(md.a + md.b <= 600)
        {
            // H together with the graph of (Theta, Delta) spans K.
            const Matrix phi_hat = stack(th, dl);
            Matrix target = Matrix::Zero(md.a + md.b, md.a + md.b);
            target.topLeftCorner(md.a, md.a).setIdentity();
            Matrix range_delta = Matrix::Identity(md.b, md.b);
            for(Eigen::Index s : top)
            {
                const Vector v = th.adjoint() * eig.vectors.col(s) / std::sqrt(md.sigma2(s));
                range_delta -= v * v.adjoint();
            }
            target.bottomRightCorner(md.b, md.b) = range_delta;
            md.residuals["span"] =
                residual_norm(md.H_basis * md.H_basis.adjoint() + phi_hat * phi_hat.adjoint() - target);
        }
    }

    if(cls.is_pure == TriState::yes)
    {
        std::vector<Eigen::Index> small;
        for(Eigen::Index s = 0; s < md.a; ++s)
            if(md.sigma2(s) < 0.5) small.push_back(s);
        if(static_cast<Eigen::Index>(small.size()) != h)
            throw Error("build_model: truncation degree too small to separate the pure-branch model space");
        md.pure_branch = true;
        md.H_pure = u_keep;
    }
    return md;
}

ModelOperatorsResult model_operators(const ConstrainedSubspace& sub, const ModelData& model)
{
    ModelOperatorsResult out;
    const DefSolve gen = solve_def(sub, model.X_H, model.d_T);
    for(const auto& y : gen.adj_ops) out.ops.push_back(y.adjoint());
    out.def_residual = gen.residual;
    out.min_singular_value = gen.min_sv;
    out.valid_rows_only = gen.valid_rows_only;
    if(model.pure_branch)
    {
        const DefSolve pure = solve_def(sub, model.H_pure, model.d_T);
        for(const auto& y : pure.adj_ops) out.pure_ops.push_back(y.adjoint());
        // X_H = H_pure diag(delta): P|_H carries one solution to the other.
        const Matrix dmat = model.H_pure.adjoint() * model.X_H;
        double agree = 0.0;
        double compress = 0.0;
        for(int i = 1; i <= sub.space.n(); ++i)
        {
            const auto k = static_cast<std::size_t>(i - 1);
            agree = std::max(agree, residual_norm(pure.adj_ops[k] * dmat - dmat * gen.adj_ops[k]));
            const Matrix b = constrained_creation(sub, i, Side::left);
            const Matrix compression = model.H_pure.adjoint() * apply_outer(b, model.H_pure, model.d_T);
            compress = std::max(compress, residual_norm(compression - out.pure_ops[k]));
        }
        out.pure_agreement = agree;
        out.compression_deviation = compress;
    }
    return out;
}

GammaResult model_unitary(const KernelMatrix& k, const ModelData& model)
{
    if(k.matrix.rows() != model.a) throw Error("model_unitary: kernel and model use different bases");
    const double smin = smallest_singular_value(k.matrix);
    if(smin <= 1e-8) throw Error("model_unitary: K is not injective (T is not c.n.c. at this truncation)");
    GammaResult out;
    out.Gamma = k.matrix.colPivHouseholderQr().solve(model.X_H).adjoint();
    const Matrix& kk = k.matrix;
    const Eigen::Index m = kk.cols();
    const Eigen::Index h = model.dim();
    out.ga_residual = residual_norm(out.Gamma * kk.adjoint() - model.X_H.adjoint());
    for(Eigen::Index g = 0; g < model.a; ++g)
        out.kstar_p = std::max(out.kstar_p, std::abs(kk.row(g).norm() - model.X_H.row(g).norm()));
    out.pgk = residual_norm(model.X_H * out.Gamma - kk);
    out.isometry = residual_norm(out.Gamma.adjoint() * out.Gamma - Matrix::Identity(m, m));
    out.coisometry = residual_norm(out.Gamma * out.Gamma.adjoint() - Matrix::Identity(h, h));
    return out;
}

ModelData build_full_model(const RowContraction& t, const ConstrainedSubspace& sub, const CharFn& theta,
                           const KernelMatrix& k, const Classification& cls, const ModelOptions& opts)
{
    ModelData md = build_model(sub, theta, cls, opts);
    const ModelOperatorsResult ops = model_operators(sub, md);
    md.Tt = ops.ops;
    md.residuals["def"] = ops.def_residual;
    md.residuals["def-inj"] = ops.min_singular_value;
    if(!ops.valid_rows_only) md.warnings.push_back("model operators solved on all rows");
    if(md.pure_branch)
    {
        md.residuals["HH"] = *ops.pure_agreement;
        md.residuals["HH-compression"] = *ops.compression_deviation;
        for(int i = 1; i <= sub.space.n(); ++i)
        {
            const Matrix b = constrained_creation(sub, i, Side::left);
            md.Tt_pure.push_back(md.H_pure.adjoint() * apply_outer(b, md.H_pure, md.d_T));
        }
    }
    const GammaResult g = model_unitary(k, md);
    md.Gamma = g.Gamma;
    md.residuals["Ga"] = g.ga_residual;
    md.residuals["K*P"] = g.kstar_p;
    md.residuals["PGK"] = g.pgk;
    md.residuals["Ga-iso"] = g.isometry;
    md.residuals["Ga-co"] = g.coisometry;
    md.residuals["model-intertw"] = model_intertwining_residual(t, md.Gamma, md.Tt);
    return md;
}

double model_intertwining_residual(const RowContraction& t, const Matrix& gamma, const std::vector<Matrix>& model_ops)
{
    if(static_cast<int>(model_ops.size()) != t.n()) throw Error("model_intertwining_residual: wrong number of model operators");
    double worst = 0.0;
    for(int i = 0; i < t.n(); ++i)
        worst = std::max(worst, residual_norm(gamma * t[i] - model_ops[static_cast<std::size_t>(i)] * gamma));
    return worst;
}

CoincidenceWitness coincidence_from_unitary(const RowContraction& t, const RowContraction& t_prime, const Matrix& u,
                                            const CharFn& theta, const CharFn& theta_prime)
{
    const Eigen::Index m = t.m();
    if(u.rows() != m || u.cols() != m || t_prime.m() != m || t_prime.n() != t.n())
        throw Error("coincidence_from_unitary: dimension mismatch");
    if(unitarity_defect(u) > 1e-10) throw Error("coincidence_from_unitary: U is not unitary");
    double scale = 1.0;
    for(int i = 0; i < t.n(); ++i) scale = std::max(scale, spectral_norm(t[i]));
    for(int i = 0; i < t.n(); ++i)
        if(spectral_norm(t_prime[i] - u * t[i] * u.adjoint()) > 1e-10 * scale)
            throw Error("coincidence_from_unitary: T' is not U T U^*");
    if(theta.d_T() != theta_prime.d_T() || theta.d_Tstar() != theta_prime.d_Tstar() || theta.outer_dim != theta_prime.outer_dim)
        throw Error("coincidence_from_unitary: the characteristic functions have different shapes");

    CoincidenceWitness w;
    w.tau = theta_prime.defect.D_T_basis.adjoint() * u * theta.defect.D_T_basis;
    w.tau_star = theta_prime.defect.D_Tstar_basis.adjoint() * kron(Matrix::Identity(t.n(), t.n()), u) * theta.defect.D_Tstar_basis;
    w.unitarity = std::max(w.tau.size() ? unitarity_defect(w.tau) : 0.0, w.tau_star.size() ? unitarity_defect(w.tau_star) : 0.0);
    const Matrix lhs = apply_inner(w.tau, theta.matrix);
    const Matrix rhs = apply_inner(w.tau_star.adjoint(), theta_prime.matrix.adjoint()).adjoint();
    w.residual = residual_norm(lhs - rhs);
    return w;
}

EquivalenceReport verify_coincidence_implies_equivalence(const RowContraction& t, const RowContraction& t_prime,
                                                         const CoincidenceWitness& witness, const ModelData& model,
                                                         const ModelData& model_prime, const std::optional<Matrix>& u)
{
    if(witness.residual >= 1e-8) throw Error("verify_coincidence_implies_equivalence: witness residual too large");
    if(model.a != model_prime.a || model.b != model_prime.b || model.dim() != model_prime.dim())
        throw Error("verify_coincidence_implies_equivalence: model spaces have different dimensions");
    if(model.Tt.empty() || model_prime.Tt.empty() || model.Gamma.size() == 0 || model_prime.Gamma.size() == 0)
        throw Error("verify_coincidence_implies_equivalence: models are incomplete");
    EquivalenceReport rep;
    const Matrix moved = stack(apply_inner(witness.tau, model.H_basis.topRows(model.a)),
                               apply_inner(witness.tau_star, model.H_basis.bottomRows(model.b)));
    rep.subspace_angle = subspace_distance(moved, model_prime.H_basis);
    const Matrix omega = model_prime.H_basis.adjoint() * moved;
    for(int i = 0; i < t.n(); ++i)
    {
        const auto k = static_cast<std::size_t>(i);
        rep.model_intertwining = std::max(rep.model_intertwining,
                                          residual_norm(omega * model.Tt[k].adjoint() - model_prime.Tt[k].adjoint() * omega));
    }
    rep.intertwiner = model_prime.Gamma.adjoint() * omega * model.Gamma;
    for(int i = 0; i < t.n(); ++i)
        rep.intertwiner_residual = std::max(rep.intertwiner_residual, residual_norm(rep.intertwiner * t[i] - t_prime[i] * rep.intertwiner));
    rep.intertwiner_unitarity =
        residual_norm(rep.intertwiner.adjoint() * rep.intertwiner - Matrix::Identity(t.m(), t.m()));
    if(u)
    {
        const Complex tr = (u->adjoint() * rep.intertwiner).trace();
        rep.phase = std::arg(tr);
        rep.distance_to_u = spectral_norm(rep.intertwiner - std::polar(1.0, *rep.phase) * (*u));
    }
    return rep;
}

} // namespace ncvar
