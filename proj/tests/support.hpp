#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncvar/model.hpp"

namespace ncvar::testing
{

using Rng = std::mt19937_64;

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Matrix random_unitary(Rng& rng, Eigen::Index m);

/// Rescales so that ||sum T_i T_i^*|| = rho.
RowContraction scale_to_rho(const RowContraction& t, double rho);

/// q = e^{i pi / 3}.
Complex corpus_q();

struct CorpusCase
{
    std::string label;
    PolyIdealSpec spec;
    RowContraction t;
    double rho;
};

/// Random pure tuples with n = 2, m cycling through {1, 2, 3} and rho in [0.1, 0.81]:
/// zero ideal (generic pairs), commutative (polynomials in one matrix), q-commuting
/// (weighted shift against a q-geometric diagonal, randomly conjugated).
std::vector<CorpusCase> make_corpus(IdealKind kind, int count, std::uint64_t seed);

/// Commuting pair p_1(A), p_2(A) scaled to rho.
RowContraction random_commuting_pair(Rng& rng, Eigen::Index m, double rho);

/// Pair with T_1 T_2 = q T_2 T_1 scaled to rho.
RowContraction random_q_commuting_pair(Rng& rng, Eigen::Index m, Complex q, double rho, bool swapped);

/// Rank of an integer matrix modulo a prime, by Gaussian elimination.
int rank_mod_prime(const std::vector<std::vector<long long>>& rows, long long prime);

/// dim N for the commutative ideal: Fock dimension minus the rank of the commutator
/// vectors e_{alpha ij beta} - e_{alpha ji beta}, built from words directly.
long long brute_force_commutative_dim_n(int n, int d);

/// sum_{k <= d} C(n + k - 1, k).
long long symmetric_fock_dim(int n, int d);

/// Theta_T assembled from dense Kronecker products of the truncated R_i.
Matrix dense_characteristic_function(const RowContraction& t, const TruncatedFockSpace& space);

/// The constrained shift (B_1 (x) I_k, ..., B_n (x) I_k).
RowContraction constrained_shift(const ConstrainedSubspace& sub, Eigen::Index k);

} // namespace ncvar::testing
