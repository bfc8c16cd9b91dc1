#include "ncvar/commands.hpp"

#include <chrono>
#include <cmath>

namespace ncvar
{

namespace
{

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Reporter
{
    Json report = Json::object();

    Reporter(const std::string& command)
    {
        report["command"] = command;
        report["residuals"] = Json::object();
        report["diagnostics"] = Json::object();
        report["timings"] = Json::object();
        report["warnings"] = Json::array();
        report["errors"] = Json::array();
    }

    void residual(const std::string& name, double value, double tolerance)
    {
        const bool pass = std::isfinite(value) && value >= 0.0 && value < tolerance;
        report["residuals"][name] = {{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
    }

    void diagnostic(const std::string& name, const Json& value) { report["diagnostics"][name] = value; }
    void timing(const std::string& name, Clock::time_point since) { report["timings"][name + "_ms"] = elapsed_ms(since); }
    void warn(const std::string& w) { report["warnings"].push_back(w); }
    void error(const std::string& e) { report["errors"].push_back(e); }

    Json finish()
    {
        bool ok = report["errors"].empty();
        for(const auto& [name, entry] : report["residuals"].items()) ok = ok && entry["pass"].get<bool>();
        report["all_pass"] = ok;
        return report;
    }
};

struct Context
{
    Problem problem;
    RowContraction t;
    TruncatedFockSpace space;
    ConstrainedSubspace sub;
    Classification cls;
    double tail_bound = 0.0;
    double constraint = 0.0;

    std::optional<KernelMatrix> kernel;
    std::optional<CharFn> theta;
};

Problem apply_overrides(Problem p, const CommandOverrides& ov)
{
    if(ov.degree)
    {
        if(*ov.degree < 0) throw ParseError("--degree: must be >= 0");
        p.d = *ov.degree;
    }
    if(ov.tol)
    {
        if(!(*ov.tol > 0.0)) throw ParseError("--tol: must be positive");
        p.options.tol_pure = *ov.tol;
        p.options.tol_cnc = *ov.tol;
    }
    return p;
}

Json classification_json(const Classification& c)
{
    return {{"is_pure", to_string(c.is_pure)},
            {"is_cnc", to_string(c.is_cnc)},
            {"k_used", c.k_used},
            {"rho", c.rho},
            {"converged", c.converged}};
}

Context analyze_stage(const Problem& input, const CommandOverrides& ov, Reporter& rep, const std::string& prefix = "")
{
    auto start = Clock::now();
    Problem p = apply_overrides(input, ov);
    RowContraction t = p.tuple();
    TruncatedFockSpace space(p.n, p.d);

    const ValidationReport val = validate(t);
    rep.residual(prefix + "contractive", std::max(0.0, -val.min_defect_eigenvalue), 1e-10);
    if(!val.pass) rep.warn(prefix + "tuple is not a row contraction");

    const DefectData def = defects(t);
    const Matrix id_m = Matrix::Identity(t.m(), t.m());
    const Matrix id_nm = Matrix::Identity(t.m() * t.n(), t.m() * t.n());
    const Matrix row = t.row();
    rep.residual(prefix + "Delta_T^2", residual_norm(def.Delta_T * def.Delta_T - (id_m - row * row.adjoint())), 1e-10);
    rep.residual(prefix + "Delta_T*^2", residual_norm(def.Delta_Tstar * def.Delta_Tstar - (id_nm - row.adjoint() * row)), 1e-10);
    for(const auto& w : def.warnings) rep.warn(prefix + w);

    Classification cls = classify(t, p.options.k_max, p.options.tol_pure, p.options.tol_cnc);
    // classify stops once the next step is below tol_pure / 100.
    rep.residual(prefix + "Q-fixed", spectral_norm(t.phi(cls.Q) - cls.Q), std::max(1e-10, 1e-2 * p.options.tol_pure));
    const double tail = spectral_norm(phi_power_identity(t, p.d + 1));

    ConstrainedSubspace sub = ideal_subspace(p.ideal, space);
    rep.residual(prefix + "N-orth",
                 residual_norm(sub.N_basis.adjoint() * sub.N_basis - Matrix::Identity(sub.dim_N(), sub.dim_N())), 1e-12);
    const double constraint = constraint_check(t, p.ideal);
    rep.residual(prefix + "constraint", constraint, 1e-10);

    Json& r = rep.report;
    r[prefix + "classification"] = classification_json(cls);
    r[prefix + "dims"] = {{"n", p.n},
                          {"d", p.d},
                          {"m", p.m},
                          {"dim_fock", space.dim()},
                          {"dim_N", sub.dim_N()},
                          {"dim_M", sub.dim_M()},
                          {"d_T", def.d_T()},
                          {"d_Tstar", def.d_Tstar()}};
    r[prefix + "ideal"] = {{"kind", to_string(p.ideal.kind)}, {"graded", sub.graded}, {"vacuum_in_N", sub.vacuum_in_N}};
    r[prefix + "tail_bound"] = tail;
    rep.diagnostic(prefix + "min_defect_eigenvalue", val.min_defect_eigenvalue);
    rep.timing(prefix + "analyze", start);
    return Context{std::move(p), std::move(t), std::move(space), std::move(sub), std::move(cls), tail, constraint, {}, {}};
}

void charfn_stage(Context& ctx, Reporter& rep, const std::string& prefix = "")
{
    auto start = Clock::now();
    const bool graded = ctx.sub.graded;
    const double tail = ctx.tail_bound;
    // Exact-at-truncation identities for graded ideals; tail-widened otherwise.
    auto exact_tol = [&](double tol) { return graded ? tol : tol + 10.0 * tail; };

    double kt_sub = 0.0;
    ctx.kernel = constrained_poisson_kernel(ctx.t, ctx.sub, &kt_sub);
    const KernelMatrix& k = *ctx.kernel;
    rep.residual(prefix + "K*K", kernel_gram_residual(k, ctx.cls.Q), tail + 1e-10);
    rep.residual(prefix + "KT-sub", kt_sub, tail + 1e-10);
    const KernelMatrix k_full = poisson_kernel(ctx.t, ctx.space, 1.0);
    double eq_ker = 0.0;
    for(double v : verify_intertwining(ctx.t, ctx.space, k_full)) eq_ker = std::max(eq_ker, v);
    rep.residual(prefix + "eq-ker", eq_ker, 1e-10);
    double co = 0.0;
    for(double v : verify_intertwining(ctx.t, ctx.sub, k)) co = std::max(co, v);
    rep.residual(prefix + "Co", co, exact_tol(1e-10));
    if(ctx.problem.options.r < 1.0)
    {
        const KernelMatrix kr = poisson_kernel(ctx.t, ctx.space, ctx.problem.options.r);
        const Eigen::Index m = ctx.t.m();
        rep.residual(prefix + "K_r-iso", spectral_norm(kr.matrix.adjoint() * kr.matrix - Matrix::Identity(m, m)),
                     kr.tail_bound + 1e-10);
    }
    rep.timing(prefix + "poisson", start);

    start = Clock::now();
    ConstrainedCharFnChecks checks;
    ctx.theta = constrained_characteristic_function(ctx.t, ctx.sub, &checks);
    const CharFn& theta = *ctx.theta;
    for(const auto& w : theta.warnings) rep.warn(prefix + w);
    rep.residual(prefix + "rest", checks.co_invariance, exact_tol(1e-10));
    if(checks.w_series) rep.residual(prefix + "rest-W", *checks.w_series, 1e-10);
    rep.residual(prefix + "multi-analytic", multi_analyticity_residual(theta, ctx.sub), exact_tol(1e-10));
    rep.residual(prefix + "J-fa", factorization_defect(theta, k), exact_tol(1e-9));

    const DeltaClassification dc = delta_and_classify(theta, tail, ctx.cls.Q, false);
    const bool outer_kernel = kernel_criterion_outer(k);
    if(ctx.cls.is_cnc == TriState::yes)
        rep.residual(prefix + "outer-agree", dc.outer == outer_kernel ? 0.0 : 1.0, 0.5);
    else
        rep.warn(prefix + "outer criterion comparison skipped: T is not certified c.n.c.");
    const double theta_norm = spectral_norm(theta.matrix);
    rep.report[prefix + "flags"] = {{"inner", dc.inner},
                                    {"outer", dc.outer},
                                    {"outer_kernel_criterion", outer_kernel},
                                    {"theta_zero", theta_norm < 1e-9},
                                    {"theta_norm", theta_norm},
                                    {"truncated_projection_residual", dc.truncated_projection_residual},
                                    {"limit_projection_residual", dc.limit_projection_residual.value_or(-1.0)},
                                    {"rank_deficiency", dc.rank_deficiency},
                                    {"rank_cutoff", dc.rank_cutoff}};
    rep.timing(prefix + "charfn", start);
}

void model_stage(Context& ctx, Reporter& rep, ModelData& md, const std::string& prefix = "")
{
    auto start = Clock::now();
    ModelOptions opts;
    opts.compute_delta = ctx.theta->matrix.cols() <= 1200;
    md = build_full_model(ctx.t, ctx.sub, *ctx.theta, *ctx.kernel, ctx.cls, opts);
    for(const auto& w : md.warnings) rep.warn(prefix + w);
    const double tail_tol = 10.0 * ctx.tail_bound + 1e-7;
    const std::map<std::string, double> tolerances = {
        {"H-orth", 1e-9}, {"dim", 0.5},      {"Phi-iso", 1e-9}, {"H-perp", 1e-9},   {"span", 1e-9},
        {"def", 1e-8},    {"HH", 1e-7},      {"Ga", tail_tol},  {"K*P", tail_tol},  {"PGK", tail_tol},
        {"Ga-iso", tail_tol}, {"Ga-co", tail_tol}, {"model-intertw", tail_tol}};
    for(const auto& [name, value] : md.residuals)
    {
        auto it = tolerances.find(name);
        if(it != tolerances.end())
            rep.residual(prefix + name, value, it->second);
        else
            rep.diagnostic(prefix + name, value);
    }
    const RowContraction model_tuple(md.Tt);
    rep.residual(prefix + "model-contractive", std::max(0.0, -validate(model_tuple).min_defect_eigenvalue), 1e-8);
    rep.residual(prefix + "model-constraint", constraint_check(model_tuple, ctx.sub.spec), 1e-8);
    rep.report[prefix + "model_dims"] = {{"dim_H", md.dim()}, {"K_space_dim", md.K_space_dim}, {"pure_branch", md.pure_branch}};
    rep.timing(prefix + "model", start);
}

template <class F>
void guarded(Reporter& rep, F&& f)
{
    try
    {
        f();
    }
    catch(const ParseError&)
    {
        throw;
    }
    catch(const Error& e)
    {
        rep.error(e.what());
    }
}

} // namespace

Json cmd_analyze(const Problem& problem, const CommandOverrides& ov)
{
    Reporter rep("analyze");
    guarded(rep, [&] { analyze_stage(problem, ov, rep); });
    return rep.finish();
}

Json cmd_charfn(const Problem& problem, const CommandOverrides& ov)
{
    Reporter rep("charfn");
    guarded(rep, [&] {
        Context ctx = analyze_stage(problem, ov, rep);
        charfn_stage(ctx, rep);
        rep.report["charfn"] = charfn_to_json(*ctx.theta);
    });
    return rep.finish();
}

Json cmd_model(const Problem& problem, const CommandOverrides& ov)
{
    Reporter rep("model");
    guarded(rep, [&] {
        Context ctx = analyze_stage(problem, ov, rep);
        charfn_stage(ctx, rep);
        ModelData md;
        model_stage(ctx, rep, md);
        rep.report["model"] = model_to_json(md);
    });
    return rep.finish();
}

Json cmd_equiv(const Problem& a, const Problem& b, const std::optional<Matrix>& u, const CommandOverrides& ov)
{
    Reporter rep("equiv");
    guarded(rep, [&] {
        if(a.n != b.n || a.m != b.m) throw Error("equiv: problems have different n or m");
        Problem b_same = b;
        b_same.ideal = a.ideal;
        b_same.d = a.d;
        Context ca = analyze_stage(a, ov, rep, "A.");
        Context cb = analyze_stage(b_same, ov, rep, "B.");
        charfn_stage(ca, rep, "A.");
        charfn_stage(cb, rep, "B.");

        auto start = Clock::now();
        if(ca.theta->fourier_available && cb.theta->fourier_available)
        {
            const SpectrumComparison sc = compare_fourier_spectra(*ca.theta, *cb.theta);
            rep.residual("fourier-spectra", sc.max_difference, 1e-8);
            if(!sc.match) rep.diagnostic("fourier-spectra-first-mismatch", sc.first_mismatch->letters());
        }
        if(!u)
        {
            rep.warn("no unitary supplied: only the necessary spectral condition was checked");
            rep.timing("equiv", start);
            return;
        }
        const CoincidenceWitness w = coincidence_from_unitary(ca.t, cb.t, *u, *ca.theta, *cb.theta);
        rep.residual("com", w.residual, 1e-9);
        rep.residual("tau-unitary", w.unitarity, 1e-10);
        ModelData ma, mb;
        model_stage(ca, rep, ma, "A.");
        model_stage(cb, rep, mb, "B.");
        const EquivalenceReport er = verify_coincidence_implies_equivalence(ca.t, cb.t, w, ma, mb, u);
        rep.residual("Uni-angle", er.subspace_angle, 1e-6);
        rep.residual("Uni-model", er.model_intertwining, 1e-7);
        rep.residual("intertw", er.intertwiner_residual, 1e-6);
        rep.residual("W-unitary", er.intertwiner_unitarity, 1e-6);
        if(er.distance_to_u) rep.residual("W-vs-U", *er.distance_to_u, 1e-6);
        rep.report["equivalence"] = {{"tau", matrix_to_json(w.tau)},
                                     {"tau_star", matrix_to_json(w.tau_star)},
                                     {"intertwiner", matrix_to_json(er.intertwiner)},
                                     {"phase", er.phase.value_or(0.0)}};
        rep.timing("equiv", start);
    });
    return rep.finish();
}

Json strip_timings(const Json& report)
{
    Json out = report;
    out.erase("timings");
    return out;
}

} // namespace ncvar
