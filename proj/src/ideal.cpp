#include "ncvar/ideal.hpp"

#include <algorithm>

namespace ncvar
{

NCPoly::NCPoly(const std::vector<std::pair<Word, Complex>>& terms)
{
    for(const auto& [w, c] : terms) terms_[w] += c;
    for(auto it = terms_.begin(); it != terms_.end();)
    {
        if(it->second == Complex(0.0, 0.0))
            it = terms_.erase(it);
        else
            ++it;
    }
}

int NCPoly::degree() const
{
    int deg = 0;
    for(const auto& [w, c] : terms_) deg = std::max(deg, w.length());
    return deg;
}

bool NCPoly::homogeneous() const
{
    if(terms_.empty()) return true;
    const int len = terms_.begin()->first.length();
    return std::all_of(terms_.begin(), terms_.end(), [len](const auto& t) { return t.first.length() == len; });
}

int NCPoly::max_letter() const
{
    int out = 0;
    for(const auto& [w, c] : terms_)
        for(int l : w.letters()) out = std::max(out, l);
    return out;
}

std::string to_string(IdealKind kind)
{
    switch(kind)
    {
    case IdealKind::zero: return "zero";
    case IdealKind::commutative: return "commutative";
    case IdealKind::q_commuting: return "q-commuting";
    case IdealKind::custom: return "custom";
    }
    return "zero";
}

IdealKind ideal_kind_from_string(const std::string& text)
{
    if(text == "zero") return IdealKind::zero;
    if(text == "commutative") return IdealKind::commutative;
    if(text == "q-commuting") return IdealKind::q_commuting;
    if(text == "custom") return IdealKind::custom;
    throw Error("unknown ideal kind '" + text + "'");
}

PolyIdealSpec PolyIdealSpec::q_commuting(int n, Complex q)
{
    PolyIdealSpec spec{n, IdealKind::q_commuting, {}, {}};
    for(int i = 1; i <= n; ++i)
        for(int j = i + 1; j <= n; ++j) spec.q.push_back({i, j, q});
    return spec;
}

std::vector<NCPoly> PolyIdealSpec::generators() const
{
    std::vector<NCPoly> out;
    switch(kind)
    {
    case IdealKind::zero: break;
    case IdealKind::commutative:
    case IdealKind::q_commuting:
        for(int i = 1; i <= n; ++i)
            for(int j = i + 1; j <= n; ++j)
            {
                Complex qv = 1.0;
                if(kind == IdealKind::q_commuting)
                    for(const auto& p : q)
                        if(p.i == i && p.j == j) qv = p.value;
                out.emplace_back(std::vector<std::pair<Word, Complex>>{{Word({i, j}), 1.0}, {Word({j, i}), -qv}});
            }
        break;
    case IdealKind::custom:
        for(const auto& p : custom)
            if(!p.is_zero()) out.push_back(p);
        break;
    }
    return out;
}

std::optional<Vector> ConstrainedSubspace::vacuum_coordinates() const
{
    if(!vacuum_in_N) return std::nullopt;
    return Vector(N_basis.row(0).adjoint());
}

Matrix ConstrainedSubspace::lift_valid(const Matrix& x, Eigen::Index inner, int max_degree) const
{
    Matrix lifted = apply_outer(N_basis, x, inner);
    return select_rows(lifted, space.rows_up_to_degree(max_degree, inner));
}

namespace
{

void check_spec(const PolyIdealSpec& spec, const TruncatedFockSpace& space)
{
    if(spec.n != space.n())
        throw Error("ideal spec has n=" + std::to_string(spec.n) + " but the Fock space has n=" + std::to_string(space.n()));
    for(const auto& p : spec.generators())
    {
        if(p.degree() > space.d())
            throw Error("generator degree " + std::to_string(p.degree()) + " exceeds truncation degree " +
                        std::to_string(space.d()));
        if(p.max_letter() > spec.n) throw Error("generator uses a letter beyond n");
    }
}

// Direct construction: the coefficient pattern of p placed between alpha and beta.
Matrix spanning_by_pattern(const std::vector<NCPoly>& gens, const TruncatedFockSpace& space)
{
    const auto& words = space.words();
    std::vector<Vector> cols;
    for(const auto& p : gens)
    {
        const int deg = p.degree();
        for(const auto& alpha : words)
        {
            if(alpha.length() + deg > space.d()) break;
            for(const auto& beta : words)
            {
                if(alpha.length() + deg + beta.length() > space.d()) break;
                Vector v = Vector::Zero(space.dim());
                for(const auto& [w, c] : p.terms()) v(space.index(alpha.concat(w).concat(beta))) += c;
                cols.push_back(std::move(v));
            }
        }
    }
    Matrix out(space.dim(), static_cast<Eigen::Index>(cols.size()));
    for(std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = cols[k];
    return out;
}

// Evaluation route: p(S_1..S_n) e_beta, then the left shift by alpha.
Matrix spanning_by_evaluation(const std::vector<NCPoly>& gens, const TruncatedFockSpace& space)
{
    std::vector<Matrix> shifts;
    for(int i = 1; i <= space.n(); ++i) shifts.push_back(left_creation(space, i));
    const auto& words = space.words();
    std::vector<Vector> cols;
    for(const auto& p : gens)
    {
        const int deg = p.degree();
        const Matrix p_of_s = apply_poly_to_tuple(p, shifts);
        for(const auto& alpha : words)
        {
            if(alpha.length() + deg > space.d()) break;
            for(const auto& beta : words)
            {
                if(alpha.length() + deg + beta.length() > space.d()) break;
                Vector v = p_of_s * space.basis_vector(beta);
                for(auto it = alpha.letters().rbegin(); it != alpha.letters().rend(); ++it) v = shifts[static_cast<std::size_t>(*it - 1)] * v;
                cols.push_back(std::move(v));
            }
        }
    }
    Matrix out(space.dim(), static_cast<Eigen::Index>(cols.size()));
    for(std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = cols[k];
    return out;
}

} // namespace

Matrix ideal_spanning_vectors(const PolyIdealSpec& spec, const TruncatedFockSpace& space)
{
    check_spec(spec, space);
    const auto gens = spec.generators();
    Matrix pattern = spanning_by_pattern(gens, space);
    Matrix evaluated = spanning_by_evaluation(gens, space);
    if(pattern.cols() != evaluated.cols() || (pattern.size() > 0 && (pattern - evaluated).cwiseAbs().maxCoeff() > 1e-12))
        throw Error("ideal_spanning_vectors: pattern and evaluation constructions disagree");
    return pattern;
}

ConstrainedSubspace ideal_subspace(const PolyIdealSpec& spec, const TruncatedFockSpace& space, double rank_tol)
{
    const Matrix span = ideal_spanning_vectors(spec, space);
    const auto gens = spec.generators();
    const bool graded = std::all_of(gens.begin(), gens.end(), [](const NCPoly& p) { return p.homogeneous(); });
    const Eigen::Index dim = space.dim();

    ConstrainedSubspace sub{space, spec, Matrix(), Matrix(), Matrix(), graded, true, {}};
    if(graded)
    {
        // Every spanning vector is homogeneous: orthonormalize degree by degree.
        std::vector<Vector> n_cols;
        std::vector<Vector> m_cols;
        for(int k = 0; k <= space.d(); ++k)
        {
            const Eigen::Index begin = space.offset(k);
            const Eigen::Index len = space.offset(k + 1) - begin;
            std::vector<Eigen::Index> members;
            for(Eigen::Index c = 0; c < span.cols(); ++c)
                if(span.col(c).segment(begin, len).norm() > 0.0) members.push_back(c);
            Matrix block(len, static_cast<Eigen::Index>(members.size()));
            for(std::size_t c = 0; c < members.size(); ++c)
                block.col(static_cast<Eigen::Index>(c)) = span.col(members[c]).segment(begin, len);
            Matrix mk = range_basis(block, rank_tol);
            Matrix nk = complement_basis(mk, len);
            for(Eigen::Index c = 0; c < mk.cols(); ++c)
            {
                Vector v = Vector::Zero(dim);
                v.segment(begin, len) = mk.col(c);
                m_cols.push_back(std::move(v));
            }
            for(Eigen::Index c = 0; c < nk.cols(); ++c)
            {
                Vector v = Vector::Zero(dim);
                v.segment(begin, len) = nk.col(c);
                n_cols.push_back(std::move(v));
                sub.N_degrees.push_back(k);
            }
        }
        sub.N_basis.resize(dim, static_cast<Eigen::Index>(n_cols.size()));
        for(std::size_t c = 0; c < n_cols.size(); ++c) sub.N_basis.col(static_cast<Eigen::Index>(c)) = n_cols[c];
        sub.M_basis.resize(dim, static_cast<Eigen::Index>(m_cols.size()));
        for(std::size_t c = 0; c < m_cols.size(); ++c) sub.M_basis.col(static_cast<Eigen::Index>(c)) = m_cols[c];
    }
    else
    {
        sub.M_basis = range_basis(span, rank_tol);
        sub.N_basis = complement_basis(sub.M_basis, dim);
        sub.N_degrees.assign(static_cast<std::size_t>(sub.N_basis.cols()), -1);
    }
    sub.P_N = sub.N_basis * sub.N_basis.adjoint();
    sub.vacuum_in_N = (sub.P_N.col(0) - space.vacuum()).norm() < 1e-10;
    return sub;
}

OperatorMatrix constrained_creation(const ConstrainedSubspace& sub, int i, Side side)
{
    const Matrix op = side == Side::left ? left_creation(sub.space, i) : right_creation(sub.space, i);
    return sub.N_basis.adjoint() * op * sub.N_basis;
}

OperatorMatrix apply_poly_to_tuple(const NCPoly& poly, const std::vector<OperatorMatrix>& x)
{
    if(x.empty()) throw Error("apply_poly_to_tuple: empty tuple");
    const Eigen::Index dim = x.front().rows();
    for(const auto& xi : x)
        if(xi.rows() != dim || xi.cols() != dim) throw Error("apply_poly_to_tuple: tuple entries must be square of equal size");
    if(poly.max_letter() > static_cast<int>(x.size())) throw Error("apply_poly_to_tuple: polynomial uses more letters than the tuple has");
    Matrix out = Matrix::Zero(dim, dim);
    for(const auto& [w, c] : poly.terms())
    {
        Matrix prod = Matrix::Identity(dim, dim);
        for(int l : w.letters()) prod = prod * x[static_cast<std::size_t>(l - 1)];
        out += c * prod;
    }
    return out;
}

} // namespace ncvar
