#include "ncvar/charfn.hpp"

#include <algorithm>
#include <cmath>

namespace ncvar
{

namespace
{

// Columns of Delta_{T*} V_* split into the n block rows D_i (m x d_{T*}).
std::vector<Matrix> defect_star_rows(const RowContraction& t, const DefectData& def)
{
    const Matrix cols = def.Delta_Tstar * def.D_Tstar_basis;
    std::vector<Matrix> out;
    for(int i = 0; i < t.n(); ++i) out.push_back(cols.middleRows(i * t.m(), t.m()));
    return out;
}

Matrix constant_coefficient(const RowContraction& t, const DefectData& def)
{
    return -(def.D_T_basis.adjoint() * t.row() * def.D_Tstar_basis);
}

// Theta (N (x) I) with Theta acting on outer (x) C^{in_inner}.
Matrix right_outer(const Matrix& theta, const Matrix& a, Eigen::Index in_inner)
{
    return apply_outer(a.adjoint(), theta.adjoint(), in_inner).adjoint();
}

} // namespace

CharFn characteristic_function(const RowContraction& t, const TruncatedFockSpace& space)
{
    if(space.n() != t.n()) throw Error("characteristic_function: Fock space and tuple have different n");
    CharFn out;
    out.defect = defects(t);
    out.provenance = "neumann-series";
    out.outer_dim = space.dim();
    out.degree = space.d();
    out.warnings = out.defect.warnings;
    if(!validate(t).pass) out.warnings.push_back("tuple is not a row contraction");

    const Eigen::Index m = t.m();
    const Eigen::Index dt = out.d_T();
    const Eigen::Index ds = out.d_Tstar();
    const Eigen::Index dim = space.dim();
    const Eigen::Index cols = dim * ds;
    const Matrix theta0 = constant_coefficient(t, out.defect);
    const auto d_rows = defect_star_rows(t, out.defect);

    // [R_1 (x) I, ..., R_n (x) I](I (x) Delta_{T*} V_*) on every input column e_gamma (x) delta_s.
    Matrix term = Matrix::Zero(dim * m, cols);
    for(Eigen::Index g = 0; g < dim; ++g)
        for(int i = 1; i <= t.n(); ++i)
        {
            const Eigen::Index to = space.append(g, i);
            if(to >= 0) term.block(to * m, g * ds, m, ds) = d_rows[static_cast<std::size_t>(i - 1)];
        }

    // sum_{k <= d} X^k with X = sum_i R_i (x) T_i^*; X raises degree, so the series is finite.
    std::vector<Matrix> adj;
    for(int i = 0; i < t.n(); ++i) adj.push_back(t[i].adjoint());
    Matrix acc = term;
    for(int k = 1; k <= space.d(); ++k)
    {
        Matrix next = Matrix::Zero(dim * m, cols);
        for(Eigen::Index idx = 0; idx < dim; ++idx)
        {
            if(space.degree(idx) >= space.d()) continue;
            const auto block = term.middleRows(idx * m, m);
            if(block.size() == 0 || block.isZero(0.0)) continue;
            for(int i = 1; i <= t.n(); ++i)
                next.middleRows(space.append(idx, i) * m, m).noalias() += adj[static_cast<std::size_t>(i - 1)] * block;
        }
        term = std::move(next);
        acc += term;
    }

    out.matrix = apply_inner(out.defect.D_T_basis.adjoint() * out.defect.Delta_T, acc);
    if(dt == 0) out.matrix = Matrix::Zero(0, cols);
    for(Eigen::Index g = 0; g < dim; ++g) out.matrix.block(g * dt, g * ds, dt, ds) += theta0;

    for(Eigen::Index idx = 0; idx < dim; ++idx) out.fourier[space.word(idx)] = out.matrix.block(idx * dt, 0, dt, ds);
    return out;
}

Matrix w_series_characteristic_function(const RowContraction& t, const ConstrainedSubspace& sub, const DefectData& def)
{
    if(!sub.graded) throw Error("w_series_characteristic_function: the W_i series is only finite for graded ideals");
    const Eigen::Index m = t.m();
    const Eigen::Index p = sub.dim_N();
    const Eigen::Index dt = def.d_T();
    const Eigen::Index ds = def.d_Tstar();
    std::vector<Matrix> w;
    for(int i = 1; i <= t.n(); ++i) w.push_back(constrained_creation(sub, i, Side::right));
    const auto d_rows = defect_star_rows(t, def);

    const Matrix input = Matrix::Identity(p * ds, p * ds);
    Matrix term = Matrix::Zero(p * m, p * ds);
    for(int i = 0; i < t.n(); ++i)
        term += apply_outer(w[static_cast<std::size_t>(i)], apply_inner(d_rows[static_cast<std::size_t>(i)], input), m);
    Matrix acc = term;
    for(int k = 1; k <= sub.space.d(); ++k)
    {
        Matrix next = Matrix::Zero(p * m, p * ds);
        for(int i = 0; i < t.n(); ++i)
            next += apply_outer(w[static_cast<std::size_t>(i)], apply_inner(t[i].adjoint(), term), m);
        term = std::move(next);
        acc += term;
    }
    Matrix out = dt == 0 ? Matrix(Matrix::Zero(0, p * ds)) : apply_inner(def.D_T_basis.adjoint() * def.Delta_T, acc);
    out += apply_inner(constant_coefficient(t, def), input);
    return out;
}

CharFn constrained_characteristic_function(const RowContraction& t, const ConstrainedSubspace& sub,
                                           ConstrainedCharFnChecks* checks)
{
    const double violation = constraint_check(t, sub.spec);
    if(violation > 1e-8)
        throw Error("constrained_characteristic_function: tuple violates the ideal constraints (residual " +
                    std::to_string(violation) + ")");
    CharFn full = characteristic_function(t, sub.space);
    const Eigen::Index dt = full.d_T();
    const Eigen::Index ds = full.d_Tstar();
    const bool trivial = sub.spec.kind == IdealKind::zero;

    CharFn out;
    out.defect = full.defect;
    out.constrained = true;
    out.provenance = "compression";
    out.outer_dim = sub.dim_N();
    out.degree = full.degree;
    out.warnings = full.warnings;
    out.matrix = trivial ? full.matrix : apply_outer(sub.N_basis.adjoint(), right_outer(full.matrix, sub.N_basis, ds), dt);

    const auto vac = sub.vacuum_coordinates();
    out.fourier_available = vac.has_value();
    if(vac)
    {
        Matrix lifted = trivial ? Matrix(full.matrix.leftCols(ds))
                                : apply_outer(sub.N_basis, out.matrix * kron(*vac, Matrix::Identity(ds, ds)), dt);
        for(Eigen::Index idx = 0; idx < sub.space.dim(); ++idx)
            out.fourier[sub.space.word(idx)] = lifted.block(idx * dt, 0, dt, ds);
    }
    else
    {
        out.warnings.push_back("vacuum is not in N; Fourier coefficients unavailable");
    }

    if(checks)
    {
        checks->constraint = violation;
        checks->co_invariance = 0.0;
        if(sub.dim_M() > 0)
        {
            const Matrix adj_on_n = apply_outer(sub.N_basis.adjoint(), full.matrix, dt).adjoint();
            checks->co_invariance = residual_norm(apply_outer(sub.M_basis.adjoint(), adj_on_n, ds));
        }
        checks->w_series.reset();
        if(sub.graded && !trivial)
            checks->w_series = residual_norm(w_series_characteristic_function(t, sub, out.defect) - out.matrix);
    }
    return out;
}

double multi_analyticity_residual(const CharFn& theta, const ConstrainedSubspace& sub)
{
    if(theta.outer_dim != sub.dim_N()) throw Error("multi_analyticity_residual: CharFn does not live on this subspace");
    const Eigen::Index dt = theta.d_T();
    const Eigen::Index ds = theta.d_Tstar();
    const auto rows = sub.space.rows_up_to_degree(sub.space.d() - 1, dt);
    double worst = 0.0;
    for(int i = 1; i <= sub.space.n(); ++i)
    {
        const Matrix b = constrained_creation(sub, i, Side::left);
        const Matrix diff = right_outer(theta.matrix, b, ds) - apply_outer(b, theta.matrix, dt);
        worst = std::max(worst, residual_norm(sub.lift_valid(diff, dt, sub.space.d() - 1)));
    }
    return worst;
}

double fourier_reconstruction_residual(const CharFn& theta, const ConstrainedSubspace& sub)
{
    if(!theta.fourier_available) throw Error("fourier_reconstruction_residual: Fourier coefficients unavailable");
    if(theta.outer_dim != sub.dim_N()) throw Error("fourier_reconstruction_residual: CharFn does not live on this subspace");
    const auto& space = sub.space;
    const Eigen::Index p = sub.dim_N();
    Matrix rebuilt = Matrix::Zero(theta.matrix.rows(), theta.matrix.cols());
    for(Eigen::Index a = 0; a < space.dim(); ++a)
    {
        // W_alpha = N^* R_alpha N with R_alpha sending e_beta to e_{beta alpha}.
        Matrix shifted = Matrix::Zero(space.dim(), p);
        for(Eigen::Index b = 0; b < space.dim(); ++b)
        {
            if(space.degree(a) + space.degree(b) > space.d()) continue;
            shifted.row(space.index(space.word(b).concat(space.word(a)))) = sub.N_basis.row(b);
        }
        const Matrix w_alpha = sub.N_basis.adjoint() * shifted;
        rebuilt += kron(w_alpha, theta.fourier.at(space.word(a)));
    }
    return residual_norm(rebuilt - theta.matrix);
}

double factorization_defect(const CharFn& theta, const KernelMatrix& k)
{
    if(theta.matrix.rows() != k.matrix.rows() || theta.outer_dim != k.outer_dim || theta.d_T() != k.d_T())
        throw Error("factorization_defect: CharFn and kernel use different bases");
    const Eigen::Index a = theta.matrix.rows();
    const Matrix r = Matrix::Identity(a, a) - theta.matrix * theta.matrix.adjoint() - k.matrix * k.matrix.adjoint();
    return residual_norm(r);
}

Matrix model_defect(const Matrix& theta, double rank_tol)
{
    const Eigen::Index b = theta.cols();
    if(theta.rows() == 0) return Matrix::Identity(b, b);
    const auto eig = hermitian_eigen(theta * theta.adjoint());
    RealVector f(eig.values.size());
    for(Eigen::Index k = 0; k < f.size(); ++k)
    {
        const double gap = 1.0 - eig.values(k);
        f(k) = gap <= rank_tol ? 1.0 / eig.values(k) : 1.0 / (1.0 + std::sqrt(std::max(gap, 0.0)));
    }
    const Matrix w = eig.vectors.adjoint() * theta;
    return Matrix::Identity(b, b) - w.adjoint() * f.cast<Complex>().asDiagonal() * w;
}

DeltaClassification delta_and_classify(const CharFn& theta, double tail_bound, const std::optional<Matrix>& q,
                                       bool compute_delta)
{
    DeltaClassification out;
    out.rank_cutoff = 10.0 * tail_bound + 1e-8;
    const Eigen::Index a = theta.matrix.rows();
    if(a > 0)
    {
        // Theta Theta^* and Theta^* Theta share their nonzero spectrum.
        const auto eig = hermitian_eigen(theta.matrix * theta.matrix.adjoint());
        for(Eigen::Index k = 0; k < eig.values.size(); ++k)
        {
            const double v = eig.values(k);
            out.truncated_projection_residual = std::max(out.truncated_projection_residual, std::abs(v * v - v));
            if(v <= out.rank_cutoff) ++out.rank_deficiency;
        }
    }
    if(q)
    {
        out.limit_projection_residual = spectral_norm(*q - (*q) * (*q));
        out.inner = *out.limit_projection_residual < 1e-8;
    }
    else
    {
        out.inner = out.truncated_projection_residual < 1e-8;
    }
    out.outer = out.rank_deficiency == 0;
    if(compute_delta) out.Delta_JT = model_defect(theta.matrix);
    return out;
}

bool kernel_criterion_outer(const KernelMatrix& k)
{
    const Eigen::Index m = k.matrix.cols();
    const auto eig = hermitian_eigen(Matrix::Identity(m, m) - k.matrix.adjoint() * k.matrix);
    const double cutoff = 10.0 * k.tail_bound + 1e-8;
    return (eig.values.array() > cutoff).all();
}

Matrix eval_commutative(const RowContraction& t, const std::vector<Complex>& z)
{
    if(static_cast<int>(z.size()) != t.n()) throw Error("eval_commutative: point has the wrong number of coordinates");
    double norm2 = 0.0;
    for(const auto& zi : z) norm2 += std::norm(zi);
    if(!(norm2 < 1.0)) throw Error("eval_commutative: the point must lie in the open unit ball");
    const double violation = constraint_check(t, PolyIdealSpec::commutative(t.n()));
    if(violation > 1e-9) throw Error("eval_commutative: the tuple does not commute (residual " + std::to_string(violation) + ")");

    const DefectData def = defects(t);
    const Eigen::Index m = t.m();
    Matrix resolvent = Matrix::Identity(m, m);
    Matrix zrow(m, m * t.n());
    for(int i = 0; i < t.n(); ++i)
    {
        resolvent -= z[static_cast<std::size_t>(i)] * t[i].adjoint();
        zrow.middleCols(i * m, m) = z[static_cast<std::size_t>(i)] * Matrix::Identity(m, m);
    }
    Eigen::FullPivLU<Matrix> lu(resolvent);
    if(!lu.isInvertible()) throw Error("eval_commutative: singular resolvent");
    const Matrix series = lu.solve(zrow * def.Delta_Tstar * def.D_Tstar_basis);
    return def.D_T_basis.adjoint() * (-t.row() * def.D_Tstar_basis + def.Delta_T * series);
}

Matrix fourier_sum(const CharFn& theta, const std::vector<Complex>& z)
{
    if(!theta.fourier_available) throw Error("fourier_sum: Fourier coefficients unavailable");
    Matrix out = Matrix::Zero(theta.d_T(), theta.d_Tstar());
    for(const auto& [w, block] : theta.fourier)
    {
        Complex mono = 1.0;
        for(int l : w.letters())
        {
            if(l > static_cast<int>(z.size())) throw Error("fourier_sum: point has too few coordinates");
            mono *= z[static_cast<std::size_t>(l - 1)];
        }
        out += mono * block;
    }
    return out;
}

RealVector fourier_singular_values(const CharFn& theta, const Word& w)
{
    auto it = theta.fourier.find(w);
    if(it == theta.fourier.end() || it->second.size() == 0) return RealVector(0);
    Eigen::JacobiSVD<Matrix> svd(it->second);
    RealVector s = svd.singularValues();
    std::sort(s.data(), s.data() + s.size());
    return s;
}

SpectrumComparison compare_fourier_spectra(const CharFn& a, const CharFn& b, double tol)
{
    SpectrumComparison out;
    if(!a.fourier_available || !b.fourier_available) throw Error("compare_fourier_spectra: Fourier coefficients unavailable");
    for(const auto& [w, block] : a.fourier)
    {
        const RealVector sa = fourier_singular_values(a, w);
        const RealVector sb = fourier_singular_values(b, w);
        double diff = 0.0;
        if(!b.fourier.contains(w))
            diff = sa.size() ? sa.maxCoeff() : 0.0;
        else
        {
            // Zero singular values may be padded on either side.
            const Eigen::Index len = std::max(sa.size(), sb.size());
            RealVector pa = RealVector::Zero(len), pb = RealVector::Zero(len);
            pa.tail(sa.size()) = sa;
            pb.tail(sb.size()) = sb;
            diff = len ? (pa - pb).cwiseAbs().maxCoeff() : 0.0;
        }
        if(diff > out.max_difference) out.max_difference = diff;
        if(diff > tol && out.match)
        {
            out.match = false;
            out.first_mismatch = w;
        }
    }
    return out;
}

} // namespace ncvar
