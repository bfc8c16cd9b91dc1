#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace ncvar;

namespace
{

double max_abs(const Matrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_of(const std::vector<double>& v)
{
    double out = 0.0;
    for(double x : v) out = std::max(out, x);
    return out;
}

RowContraction scalars(std::vector<Complex> v)
{
    std::vector<Matrix> ops;
    for(Complex c : v) ops.push_back(Matrix::Constant(1, 1, c));
    return RowContraction(ops);
}

double min_singular_value(const Matrix& a)
{
    return Eigen::JacobiSVD<Matrix>(a).singularValues().minCoeff();
}

} // namespace

TEST_CASE("kernel of the zero tuple embeds along the vacuum")
{
    const TruncatedFockSpace space(2, 3);
    const KernelMatrix k = poisson_kernel(scalars({0.0, 0.0}), space);
    REQUIRE(k.matrix.rows() == space.dim());
    CHECK(max_abs(k.matrix - space.vacuum()) == 0.0);
    CHECK(max_abs(k.matrix.adjoint() * k.matrix - Matrix::Identity(1, 1)) == 0.0);
    CHECK(k.tail_bound == 0.0);
    CHECK(max_of(verify_intertwining(scalars({0.0, 0.0}), space, k)) == 0.0);
}

TEST_CASE("scalar pair kernel Gram matches the geometric sum")
{
    const TruncatedFockSpace space(2, 10);
    const RowContraction t = scalars({0.5, 0.5});
    const KernelMatrix k = poisson_kernel(t, space);
    double oracle = 0.0;
    for(int j = 0; j <= 10; ++j) oracle += std::pow(2.0, j) * std::pow(0.25, j) * 0.5;
    CHECK(std::abs((k.matrix.adjoint() * k.matrix)(0, 0) - oracle) < 1e-14);
    CHECK(k.tail_bound == doctest::Approx(std::pow(0.5, 11)));
    CHECK(kernel_gram_residual(k, Matrix::Zero(1, 1)) < std::pow(0.5, 11) + 1e-10);
}

TEST_CASE("radial kernels are isometric up to the tail")
{
    testing::Rng rng(31);
    const TruncatedFockSpace space(2, 6);
    for(int trial = 0; trial < 5; ++trial)
    {
        const RowContraction t = testing::scale_to_rho(
            RowContraction({testing::random_matrix(rng, 2, 2), testing::random_matrix(rng, 2, 2)}), 0.95);
        const KernelMatrix k = poisson_kernel(t, space, 0.9);
        CHECK(spectral_norm(k.matrix.adjoint() * k.matrix - Matrix::Identity(2, 2)) <= k.tail_bound + 1e-12);
        CHECK(k.tail_bound > 0.0);
    }
    CHECK_THROWS_AS(poisson_kernel(scalars({0.5}), TruncatedFockSpace(1, 3), 1.5), Error);
}

TEST_CASE("Gram identity and intertwining on random tuples")
{
    testing::Rng rng(41);
    const TruncatedFockSpace space(2, 6);
    const ConstrainedSubspace comm = ideal_subspace(PolyIdealSpec::commutative(2), space);
    for(int trial = 0; trial < 6; ++trial)
    {
        const RowContraction t = testing::random_commuting_pair(rng, 1 + trial % 3, 0.7);
        const Classification cls = classify(t);
        const KernelMatrix k_full = poisson_kernel(t, space);
        CHECK(kernel_gram_residual(k_full, cls.Q) <= k_full.tail_bound + 1e-10);
        CHECK(max_of(verify_intertwining(t, space, k_full)) < 1e-10);

        double kt_sub = -1.0;
        const KernelMatrix k = constrained_poisson_kernel(t, comm, &kt_sub);
        CHECK(k.constrained);
        CHECK(kt_sub <= k.tail_bound + 1e-10);
        CHECK(kernel_gram_residual(k, cls.Q) <= k.tail_bound + 1e-10);
        CHECK(max_of(verify_intertwining(t, comm, k)) < 1e-10);
        CHECK(min_singular_value(k.matrix) >= std::sqrt(1.0 - k.tail_bound) - 1e-8);
    }
}

TEST_CASE("zero ideal kernel is the unconstrained kernel")
{
    testing::Rng rng(43);
    const TruncatedFockSpace space(2, 4);
    const ConstrainedSubspace sub = ideal_subspace(PolyIdealSpec::zero(2), space);
    const RowContraction t = testing::scale_to_rho(
        RowContraction({testing::random_matrix(rng, 2, 2), testing::random_matrix(rng, 2, 2)}), 0.5);
    CHECK(max_abs(constrained_poisson_kernel(t, sub).matrix - poisson_kernel(t, space).matrix) == 0.0);
}

TEST_CASE("commuting scalar pair gives an isometric constrained kernel")
{
    const TruncatedFockSpace space(2, 8);
    const ConstrainedSubspace sub = ideal_subspace(PolyIdealSpec::commutative(2), space);
    const KernelMatrix k = constrained_poisson_kernel(scalars({0.5, 0.5}), sub);
    CHECK(spectral_norm(k.matrix.adjoint() * k.matrix - Matrix::Identity(1, 1)) < k.tail_bound + 1e-10);
}

TEST_CASE("constrained shift kernel is the identity embedding")
{
    const TruncatedFockSpace space(2, 4);
    for(const auto& spec : {PolyIdealSpec::commutative(2), PolyIdealSpec::q_commuting(2, testing::corpus_q())})
    {
        const ConstrainedSubspace sub = ideal_subspace(spec, space);
        const KernelMatrix k = constrained_poisson_kernel(testing::constrained_shift(sub, 1), sub);
        REQUIRE(k.d_T() == 1);
        const Complex phase = k.matrix(0, 0);
        CHECK(std::abs(phase) == doctest::Approx(1.0));
        CHECK(max_abs(k.matrix - phase * Matrix::Identity(sub.dim_N(), sub.dim_N())) < 1e-12);
    }
}

TEST_CASE("kernel fails to be injective on a coisometric summand")
{
    const TruncatedFockSpace space(2, 6);
    const ConstrainedSubspace sub = ideal_subspace(PolyIdealSpec::commutative(2), space);
    const double c = std::sqrt(0.5);
    const RowContraction t({Eigen::Vector2cd(0.3, c).asDiagonal(), Eigen::Vector2cd(0.2, c).asDiagonal()});
    const KernelMatrix k = constrained_poisson_kernel(t, sub);
    CHECK(min_singular_value(k.matrix) < 1e-8);
}

TEST_CASE("constraint violations are rejected")
{
    const TruncatedFockSpace space(2, 3);
    const ConstrainedSubspace sub = ideal_subspace(PolyIdealSpec::commutative(2), space);
    Matrix shear = Matrix::Zero(2, 2);
    shear(0, 1) = 0.5;
    const RowContraction t({shear, Eigen::Vector2cd(0.1, 0.4).asDiagonal()});
    CHECK_THROWS_AS(constrained_poisson_kernel(t, sub), Error);
}
