#include "support.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace ncvar::testing
{

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(rows, cols);
    for(Eigen::Index r = 0; r < rows; ++r)
        for(Eigen::Index c = 0; c < cols; ++c) a(r, c) = Complex(g(rng), g(rng));
    return a;
}

Matrix random_unitary(Rng& rng, Eigen::Index m)
{
    Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, m, m));
    Matrix q = qr.householderQ() * Matrix::Identity(m, m);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for(Eigen::Index k = 0; k < m; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    return q;
}

RowContraction scale_to_rho(const RowContraction& t, double rho)
{
    const double current = spectral_norm(t.phi(Matrix::Identity(t.m(), t.m())));
    if(current == 0.0) return t;
    return t.scaled(std::sqrt(rho / current));
}

Complex corpus_q()
{
    return std::polar(1.0, std::numbers::pi / 3.0);
}

RowContraction random_commuting_pair(Rng& rng, Eigen::Index m, double rho)
{
    const Matrix a = random_matrix(rng, m, m);
    std::vector<Matrix> ops;
    for(int i = 0; i < 2; ++i)
    {
        const Matrix c = random_matrix(rng, 1, 3);
        ops.push_back(c(0, 0) * Matrix::Identity(m, m) + c(0, 1) * a + c(0, 2) * a * a);
    }
    return scale_to_rho(RowContraction(ops), rho);
}

RowContraction random_q_commuting_pair(Rng& rng, Eigen::Index m, Complex q, double rho, bool swapped)
{
    std::uniform_real_distribution<double> w(0.3, 1.0);
    Matrix shift = Matrix::Zero(m, m);
    for(Eigen::Index k = 1; k < m; ++k) shift(k - 1, k) = w(rng);
    const Complex lead = random_matrix(rng, 1, 1)(0, 0);
    Matrix diag = Matrix::Zero(m, m);
    for(Eigen::Index k = 0; k < m; ++k)
        diag(k, k) = lead * std::pow(swapped ? std::conj(q) : q, static_cast<double>(k));
    // Upper shift T_s e_k = w e_{k-1}: T_s D = q D T_s needs D = diag(q^k); D T_s = q T_s D needs diag(conj(q)^k).
    std::vector<Matrix> ops = swapped ? std::vector<Matrix>{diag, shift} : std::vector<Matrix>{shift, diag};
    const Matrix u = random_unitary(rng, m);
    return scale_to_rho(RowContraction(ops).conjugated(u), rho);
}

std::vector<CorpusCase> make_corpus(IdealKind kind, int count, std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_real_distribution<double> rho_dist(0.1, 0.81);
    std::vector<CorpusCase> out;
    for(int k = 0; k < count; ++k)
    {
        const Eigen::Index m = 1 + k % 3;
        const double rho = rho_dist(rng);
        PolyIdealSpec spec = PolyIdealSpec::zero(2);
        std::vector<Matrix> ops;
        switch(kind)
        {
        case IdealKind::zero:
            ops = {random_matrix(rng, m, m), random_matrix(rng, m, m)};
            out.push_back({"zero-" + std::to_string(k), spec, scale_to_rho(RowContraction(ops), rho), rho});
            break;
        case IdealKind::commutative:
            spec = PolyIdealSpec::commutative(2);
            out.push_back({"commutative-" + std::to_string(k), spec, random_commuting_pair(rng, m, rho), rho});
            break;
        case IdealKind::q_commuting:
            spec = PolyIdealSpec::q_commuting(2, corpus_q());
            out.push_back({"q-commuting-" + std::to_string(k), spec, random_q_commuting_pair(rng, m, corpus_q(), rho, k % 2 == 1), rho});
            break;
        case IdealKind::custom: throw Error("make_corpus: custom ideals have no corpus");
        }
    }
    return out;
}

int rank_mod_prime(const std::vector<std::vector<long long>>& rows, long long prime)
{
    std::vector<std::vector<long long>> a = rows;
    for(auto& row : a)
        for(auto& v : row) v = ((v % prime) + prime) % prime;
    if(a.empty()) return 0;
    const std::size_t cols = a.front().size();
    int rank = 0;
    auto power = [prime](long long base, long long e) {
        long long r = 1;
        base %= prime;
        while(e > 0)
        {
            if(e & 1) r = static_cast<long long>(static_cast<__int128>(r) * base % prime);
            base = static_cast<long long>(static_cast<__int128>(base) * base % prime);
            e >>= 1;
        }
        return r;
    };
    for(std::size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c)
    {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while(pivot < a.size() && a[pivot][c] == 0) ++pivot;
        if(pivot == a.size()) continue;
        std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
        auto& prow = a[static_cast<std::size_t>(rank)];
        const long long inv = power(prow[c], prime - 2);
        for(auto& v : prow) v = static_cast<long long>(static_cast<__int128>(v) * inv % prime);
        for(std::size_t r = 0; r < a.size(); ++r)
        {
            if(r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
            const long long f = a[r][c];
            for(std::size_t k = c; k < cols; ++k)
                a[r][k] = ((a[r][k] - static_cast<long long>(static_cast<__int128>(f) * prow[k] % prime)) % prime + prime) % prime;
        }
        ++rank;
    }
    return rank;
}

long long brute_force_commutative_dim_n(int n, int d)
{
    // Words as strings, enumerated independently of the library.
    std::vector<std::string> words{""};
    std::vector<std::string> level{""};
    for(int k = 1; k <= d; ++k)
    {
        std::vector<std::string> next;
        for(const auto& w : level)
            for(int i = 1; i <= n; ++i) next.push_back(w + static_cast<char>('0' + i));
        words.insert(words.end(), next.begin(), next.end());
        level = std::move(next);
    }
    std::map<std::string, std::size_t> position;
    for(std::size_t k = 0; k < words.size(); ++k) position[words[k]] = k;

    std::vector<std::vector<long long>> vectors;
    for(const auto& alpha : words)
        for(const auto& beta : words)
        {
            if(alpha.size() + beta.size() + 2 > static_cast<std::size_t>(d)) continue;
            for(int i = 1; i <= n; ++i)
                for(int j = i + 1; j <= n; ++j)
                {
                    std::vector<long long> v(words.size(), 0);
                    const char ci = static_cast<char>('0' + i), cj = static_cast<char>('0' + j);
                    v[position[alpha + ci + cj + beta]] += 1;
                    v[position[alpha + cj + ci + beta]] -= 1;
                    vectors.push_back(std::move(v));
                }
        }
    const int r1 = rank_mod_prime(vectors, 2147483647LL);
    const int r2 = rank_mod_prime(vectors, 1000000007LL);
    return static_cast<long long>(words.size()) - std::max(r1, r2);
}

long long symmetric_fock_dim(int n, int d)
{
    long long total = 0;
    for(int k = 0; k <= d; ++k)
    {
        // C(n + k - 1, k)
        long long c = 1;
        for(int j = 1; j <= k; ++j) c = c * (n - 1 + j) / j;
        total += c;
    }
    return total;
}

Matrix dense_characteristic_function(const RowContraction& t, const TruncatedFockSpace& space)
{
    const DefectData def = defects(t);
    const Eigen::Index m = t.m();
    const Eigen::Index dim = space.dim();
    const Matrix id_f = Matrix::Identity(dim, dim);
    Matrix x = Matrix::Zero(dim * m, dim * m);
    Matrix row_r = Matrix::Zero(dim * m, dim * m * t.n());
    for(int i = 1; i <= t.n(); ++i)
    {
        const Matrix r = right_creation(space, i);
        x += kron(r, t[i - 1].adjoint());
        row_r.middleCols((i - 1) * dim * m, dim * m) = kron(r, Matrix::Identity(m, m));
    }
    Matrix neumann = Matrix::Identity(dim * m, dim * m);
    Matrix power = neumann;
    for(int k = 1; k <= space.d(); ++k)
    {
        power = power * x;
        neumann += power;
    }
    // The row [R_i (x) I] acts on (F (x) C^m)^n, while Delta_{T*} acts on F (x) C^{nm}: reorder.
    Matrix reorder = Matrix::Zero(dim * m * t.n(), dim * m * t.n());
    for(Eigen::Index g = 0; g < dim; ++g)
        for(int i = 0; i < t.n(); ++i)
            for(Eigen::Index j = 0; j < m; ++j) reorder(i * dim * m + g * m + j, g * m * t.n() + i * m + j) = 1.0;
    const Matrix input = kron(id_f, def.Delta_Tstar * def.D_Tstar_basis);
    const Matrix out_map = kron(id_f, def.D_T_basis.adjoint() * def.Delta_T);
    return -kron(id_f, def.D_T_basis.adjoint() * t.row() * def.D_Tstar_basis) + out_map * neumann * row_r * reorder * input;
}

RowContraction constrained_shift(const ConstrainedSubspace& sub, Eigen::Index k)
{
    std::vector<Matrix> ops;
    for(int i = 1; i <= sub.space.n(); ++i) ops.push_back(kron(constrained_creation(sub, i, Side::left), Matrix::Identity(k, k)));
    return RowContraction(ops);
}

} // namespace ncvar::testing
