#include "ncvar/poisson.hpp"

namespace ncvar
{

KernelMatrix poisson_kernel(const RowContraction& t, const TruncatedFockSpace& space, double r)
{
    if(!(r > 0.0 && r <= 1.0)) throw Error("poisson_kernel: r must lie in (0, 1]");
    if(space.n() != t.n()) throw Error("poisson_kernel: Fock space and tuple have different n");
    const DefectData def = defects(t, r);
    KernelMatrix k;
    k.r = r;
    k.Delta = def.Delta_T;
    k.defect_basis = def.D_T_basis;
    k.outer_dim = space.dim();
    k.degree = space.d();
    const Eigen::Index dt = k.d_T();
    const Eigen::Index m = t.m();

    std::vector<Matrix> scaled_adj;
    for(int i = 0; i < t.n(); ++i) scaled_adj.push_back(r * t[i].adjoint());

    k.matrix.resize(space.dim() * dt, m);
    if(dt > 0)
    {
        k.matrix.topRows(dt) = k.defect_basis.adjoint() * k.Delta;
        // Block of g_i beta is the block of beta times r T_i^*.
        for(Eigen::Index idx = 1; idx < space.dim(); ++idx)
        {
            const int first = space.word(idx)[0];
            k.matrix.middleRows(idx * dt, dt) =
                k.matrix.middleRows(space.tail(idx) * dt, dt) * scaled_adj[static_cast<std::size_t>(first - 1)];
        }
    }
    k.tail_bound = spectral_norm(phi_power_identity(t.scaled(r), space.d() + 1));
    return k;
}

KernelMatrix constrained_poisson_kernel(const RowContraction& t, const ConstrainedSubspace& sub, double* kt_sub)
{
    const double violation = constraint_check(t, sub.spec);
    if(violation > 1e-8)
        throw Error("constrained_poisson_kernel: tuple violates the ideal constraints (residual " + std::to_string(violation) + ")");
    KernelMatrix full = poisson_kernel(t, sub.space, 1.0);
    KernelMatrix k = full;
    k.constrained = true;
    k.outer_dim = sub.dim_N();
    k.matrix = apply_outer(sub.N_basis.adjoint(), full.matrix, full.d_T());
    if(kt_sub) *kt_sub = residual_norm(apply_outer(sub.M_basis.adjoint(), full.matrix, full.d_T()));
    return k;
}

double kernel_gram_residual(const KernelMatrix& k, const Matrix& q)
{
    const Eigen::Index m = k.matrix.cols();
    if(q.rows() != m || q.cols() != m) throw Error("kernel_gram_residual: Q has the wrong size");
    return spectral_norm(k.matrix.adjoint() * k.matrix - (Matrix::Identity(m, m) - q));
}

namespace
{

std::vector<double> intertwining_residuals(const RowContraction& t, const TruncatedFockSpace& space, const KernelMatrix& k,
                                           const Matrix* n_basis)
{
    const Eigen::Index dt = k.d_T();
    const auto rows = space.rows_up_to_degree(space.d() - 1, dt);
    std::vector<double> out;
    for(int i = 1; i <= t.n(); ++i)
    {
        Matrix lhs = k.matrix * t[i - 1].adjoint();
        Matrix rhs;
        if(n_basis)
        {
            const Matrix b_adj = (n_basis->adjoint() * left_creation(space, i) * (*n_basis)).adjoint();
            rhs = apply_outer(*n_basis, apply_outer(b_adj, k.matrix, dt), dt);
            lhs = apply_outer(*n_basis, lhs, dt);
        }
        else
        {
            rhs = apply_outer(left_creation(space, i).adjoint(), k.matrix, dt);
        }
        out.push_back(residual_norm(select_rows(lhs - rhs, rows)));
    }
    return out;
}

} // namespace

std::vector<double> verify_intertwining(const RowContraction& t, const TruncatedFockSpace& space, const KernelMatrix& k)
{
    if(k.constrained || k.outer_dim != space.dim()) throw Error("verify_intertwining: kernel is not an unconstrained kernel on this space");
    return intertwining_residuals(t, space, k, nullptr);
}

std::vector<double> verify_intertwining(const RowContraction& t, const ConstrainedSubspace& sub, const KernelMatrix& k)
{
    if(k.outer_dim != sub.dim_N()) throw Error("verify_intertwining: kernel does not live on this subspace");
    return intertwining_residuals(t, sub.space, k, &sub.N_basis);
}

} // namespace ncvar
