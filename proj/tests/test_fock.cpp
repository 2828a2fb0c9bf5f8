#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdeform/fock.hpp"

using namespace qdeform;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix random_matrix(int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(dist(rng), dist(rng));
    return m;
}

} // namespace

TEST_CASE("make_fock_space validates its bounds") {
    FockBasis b = make_fock_space(4, 2);
    CHECK(b.dim == 4);
    CHECK(b.grading == 2);
    FockBasis big = make_fock_space(16, 4);
    CHECK(big.dim == 16);
    CHECK(big.grading == 4);
    CHECK_THROWS_AS(make_fock_space(1, 1), InvalidArgument);
    CHECK_THROWS_AS(make_fock_space(4, 0), InvalidArgument);
    CHECK_THROWS_AS(make_fock_space(4, 5), InvalidArgument);
}

TEST_CASE("number operator is diag(0..D-1)") {
    FockBasis b3 = make_fock_space(3, 1);
    Matrix n3 = number_operator(b3).entries();
    CHECK(n3(0, 0) == Complex(0, 0));
    CHECK(n3(1, 1) == Complex(1, 0));
    CHECK(n3(2, 2) == Complex(2, 0));

    Matrix n2 = number_operator(make_fock_space(2, 1)).entries();
    CHECK(n2(0, 0) == Complex(0, 0));
    CHECK(n2(1, 1) == Complex(1, 0));

    // trace oracle: 0+1+2+3+4
    Matrix n5 = number_operator(make_fock_space(5, 1)).entries();
    CHECK(n5.trace() == Complex(10, 0));
}

TEST_CASE("projectors select congruence classes") {
    FockBasis b = make_fock_space(4, 2);
    Matrix p0 = projector(b, 0).entries();
    Matrix p1 = projector(b, 1).entries();
    for (int n = 0; n < 4; ++n) {
        CHECK(std::abs(p0(n, n) - Complex(n % 2 == 0 ? 1.0 : 0.0, 0.0)) < 1e-13);
        CHECK(std::abs(p1(n, n) - Complex(n % 2 == 1 ? 1.0 : 0.0, 0.0)) < 1e-13);
    }
    CHECK_THROWS_AS(projector(b, 2), InvalidArgument);
    CHECK_THROWS_AS(projector(b, -1), InvalidArgument);

    // lambda=3, D=6, mu=2: indicator of n = 2 mod 3, cross-checked against the
    // exponential sum internally
    Matrix p2 = projector(make_fock_space(6, 3), 2).entries();
    const double expected[6] = {0, 0, 1, 0, 0, 1};
    for (int n = 0; n < 6; ++n) CHECK(std::abs(p2(n, n) - expected[n]) < 1e-13);
}

TEST_CASE("projector completeness and orthogonality") {
    for (int lambda : {1, 2, 3, 4, 8, 16}) {
        FockBasis b = make_fock_space(256, lambda);
        Matrix sum = Matrix::Zero(256, 256);
        std::vector<Matrix> ps;
        for (int mu = 0; mu < lambda; ++mu) {
            ps.push_back(projector(b, mu).entries());
            sum += ps.back();
        }
        CHECK((sum - Matrix::Identity(256, 256)).norm() < 1e-13);
        for (int mu = 0; mu < lambda; ++mu)
            for (int nu = 0; nu < lambda; ++nu) {
                Matrix prod = ps[mu] * ps[nu];
                Matrix expect = mu == nu ? ps[nu] : Matrix::Zero(256, 256);
                CHECK((prod - expect).norm() < 1e-13);
            }
        // [N, P_mu] = 0 exactly (both diagonal)
        Matrix n = number_operator(b).entries();
        for (int mu = 0; mu < lambda; ++mu)
            CHECK((n * ps[mu] - ps[mu] * n).norm() == 0.0);
    }
}

TEST_CASE("klein operator") {
    Matrix k2 = klein_operator(make_fock_space(4, 2)).entries();
    const double expected2[4] = {1, -1, 1, -1};
    for (int n = 0; n < 4; ++n) CHECK(std::abs(k2(n, n) - expected2[n]) < 1e-15);

    Matrix k1 = klein_operator(make_fock_space(5, 1)).entries();
    for (int n = 0; n < 5; ++n) CHECK(k1(n, n) == Complex(1, 0));

    Matrix k4 = klein_operator(make_fock_space(4, 4)).entries();
    CHECK(std::abs(k4(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(k4(1, 1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(k4(2, 2) - Complex(-1, 0)) < 1e-15);
    CHECK(std::abs(k4(3, 3) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("klein periodicity K^lambda = I") {
    for (int lambda : {1, 2, 3, 5, 8, 13, 16}) {
        FockBasis b = make_fock_space(64, lambda);
        OperatorMatrix k = klein_operator(b);
        CHECK((matrix_power(k, lambda).entries() - Matrix::Identity(64, 64)).norm() < 1e-12);
    }
}

TEST_CASE("structure function operator and validation") {
    // kappa = 0.5 oracle: F(n) = n + 0.5*(n odd)
    auto spec = StructureFunctionSpec::from_alphas({0.5, -0.5});
    Matrix f = structure_function_operator(make_fock_space(4, 2), spec).entries();
    CHECK(f(0, 0) == Complex(0.0, 0));
    CHECK(f(1, 1) == Complex(1.5, 0));
    CHECK(f(2, 2) == Complex(2.0, 0));
    CHECK(f(3, 3) == Complex(3.5, 0));

    // zero deformation reduces to N
    auto zero = StructureFunctionSpec::from_alphas({0.0, 0.0});
    Matrix f0 = structure_function_operator(make_fock_space(3, 2), zero).entries();
    Matrix n = number_operator(make_fock_space(3, 2)).entries();
    CHECK((f0 - n).norm() == 0.0);

    CHECK_THROWS_AS(StructureFunctionSpec::from_alphas({-1.5, 1.5}), InvalidArgument);
    CHECK_THROWS_AS(StructureFunctionSpec::from_alphas({0.5, 0.5}), InvalidArgument);
}

TEST_CASE("ladder operators carry sqrt(F)") {
    // undeformed D=3: raising subdiagonal (1, sqrt 2)
    auto zero = StructureFunctionSpec::from_alphas({0.0, 0.0});
    FockBasis b3 = make_fock_space(3, 2);
    LadderPair p3 = ladder_operators(b3, zero);
    CHECK(std::abs(p3.raising.entries()(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(p3.raising.entries()(2, 1) - std::sqrt(2.0)) < 1e-15);
    Matrix prod = p3.lowering.entries() * p3.raising.entries();
    CHECK(std::abs(prod(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(prod(1, 1) - 2.0) < 1e-15);

    // kappa = 0.5, D=4: raising subdiagonal (sqrt 1.5, sqrt 2, sqrt 3.5)
    auto spec = StructureFunctionSpec::from_alphas({0.5, -0.5});
    LadderPair p4 = ladder_operators(make_fock_space(4, 2), spec);
    CHECK(std::abs(p4.raising.entries()(1, 0) - std::sqrt(1.5)) < 1e-15);
    CHECK(std::abs(p4.raising.entries()(2, 1) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(p4.raising.entries()(3, 2) - std::sqrt(3.5)) < 1e-15);

    // lowering annihilates the vacuum
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(4);
    vac(0) = 1.0;
    CHECK((p4.lowering.entries() * vac).norm() == 0.0);
}

TEST_CASE("ladder consistency with the structure function") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> beta_dist(-0.8, 2.5);
    for (int lambda : {2, 3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> betas(lambda, 0.0);
            for (int mu = 1; mu < lambda; ++mu) betas[mu] = beta_dist(rng);
            std::vector<double> alphas(lambda);
            for (int mu = 0; mu < lambda; ++mu)
                alphas[mu] = (mu + 1 < lambda ? betas[mu + 1] : 0.0) - betas[mu];
            auto spec = StructureFunctionSpec::from_alphas(alphas);
            FockBasis b = make_fock_space(32, lambda);
            LadderPair l = ladder_operators(b, spec);
            Matrix fN = structure_function_operator(b, spec).entries();

            // a† a = F(N) on every level
            CHECK((l.raising.entries() * l.lowering.entries() - fN).norm() < 1e-12);
            // a a† = F(N+1) away from the top level
            Matrix aad = l.lowering.entries() * l.raising.entries();
            for (int n = 0; n + 1 < 32; ++n)
                CHECK(std::abs(aad(n, n) - Complex(spec.value(n + 1), 0.0)) < 1e-12);
            // shift relation a† P_mu = P_{mu+1} a†
            for (int mu = 0; mu < lambda; ++mu) {
                Matrix lhs = l.raising.entries() * projector(b, mu).entries();
                Matrix rhs = projector(b, (mu + 1) % lambda).entries() * l.raising.entries();
                CHECK((lhs - rhs).norm() < 1e-13);
            }
        }
    }
}

TEST_CASE("q_bracket") {
    FockBasis b = make_fock_space(2, 1);
    SUBCASE("[A, A]_1 = 0") {
        std::mt19937 rng(3);
        OperatorMatrix a(b, random_matrix(2, rng));
        CHECK(q_bracket(a, a, Complex(1, 0)).entries().norm() == 0.0);
    }
    SUBCASE("hand-multiplied 2x2 oracle") {
        Matrix am = Matrix::Zero(2, 2);
        am(1, 1) = 1.0; // diag(0, 1)
        Matrix bm = Matrix::Zero(2, 2);
        bm(0, 1) = 1.0;
        OperatorMatrix A(b, am), B(b, bm);
        Matrix r = q_bracket(A, B, Complex(1, 0)).entries();
        CHECK((r + bm).norm() == 0.0); // AB - BA = -B
    }
    SUBCASE("q = -1 is the anticommutator") {
        Matrix up = Matrix::Zero(2, 2), dn = Matrix::Zero(2, 2);
        up(0, 1) = 1.0;
        dn(1, 0) = 1.0;
        OperatorMatrix A(b, up), B(b, dn);
        Matrix r = q_bracket(A, B, Complex(-1, 0)).entries();
        CHECK((r - Matrix::Identity(2, 2)).norm() == 0.0); // {sigma+, sigma-} = I
    }
    SUBCASE("basis mismatch") {
        OperatorMatrix A(b, Matrix::Zero(2, 2));
        OperatorMatrix C(make_fock_space(3, 1), Matrix::Zero(3, 3));
        CHECK_THROWS_AS(q_bracket(A, C, Complex(1, 0)), InvalidArgument);
    }
}

TEST_CASE("q_bracket properties under random matrices") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 120; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 7); // up to 8
        FockBasis b = make_fock_space(dim, 1);
        OperatorMatrix A(b, random_matrix(dim, rng));
        OperatorMatrix B(b, random_matrix(dim, rng));
        OperatorMatrix C(b, random_matrix(dim, rng));
        const Complex q(dist(rng), dist(rng));
        const Complex s(dist(rng), dist(rng));

        // antisymmetry of the plain commutator
        Matrix ab = q_bracket(A, B, Complex(1, 0)).entries();
        Matrix ba = q_bracket(B, A, Complex(1, 0)).entries();
        CHECK((ab + ba).norm() < 1e-12);

        // bilinearity in the first slot: [A + sC, B]_q = [A,B]_q + s[C,B]_q
        OperatorMatrix AsC(b, A.entries() + s * C.entries());
        Matrix lhs = q_bracket(AsC, B, q).entries();
        Matrix rhs = q_bracket(A, B, q).entries() + s * q_bracket(C, B, q).entries();
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("masked residual") {
    FockBasis b = make_fock_space(4, 2);
    SUBCASE("zero matrix") {
        MaskedResidual r = masked_residual(OperatorMatrix(b, Matrix::Zero(4, 4)), 2);
        CHECK(r.raw_norm == 0.0);
        CHECK(r.masked_norm == 0.0);
    }
    SUBCASE("truncation artifact of [a, a+] - I at D=4") {
        auto zero = StructureFunctionSpec::from_alphas({0.0, 0.0});
        LadderPair l = ladder_operators(b, zero);
        Matrix comm = l.lowering.entries() * l.raising.entries() -
                      l.raising.entries() * l.lowering.entries();
        // brute-force oracle: diag(1,1,1,-3), so residual diag(0,0,0,-4)
        CHECK(std::abs(comm(3, 3) - Complex(-3.0, 0.0)) < 1e-14);
        OperatorMatrix residual(b, comm - Matrix::Identity(4, 4));
        MaskedResidual r0 = masked_residual(residual, 0);
        CHECK(r0.raw_norm == doctest::Approx(4.0).epsilon(1e-14));
        MaskedResidual r1 = masked_residual(residual, 1);
        CHECK(r1.masked_norm < 1e-14); // sqrt(F)^2 is exact only to rounding
        CHECK(r1.raw_norm == doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("bounds") {
        OperatorMatrix m(b, Matrix::Zero(4, 4));
        CHECK_THROWS_AS(masked_residual(m, 4), InvalidArgument);
        CHECK_THROWS_AS(masked_residual(m, -1), InvalidArgument);
    }
}

TEST_CASE("calogero-vasiliev closure at lambda = 2") {
    for (double kappa : {-0.9, -0.5, 0.0, 0.5, 2.0}) {
        FockBasis b = make_fock_space(32, 2);
        auto spec = StructureFunctionSpec::from_alphas({kappa, -kappa});
        LadderPair l = ladder_operators(b, spec);
        Matrix k = klein_operator(b).entries();
        Matrix comm = l.lowering.entries() * l.raising.entries() -
                      l.raising.entries() * l.lowering.entries();
        Matrix residual = comm - Matrix::Identity(32, 32) - kappa * k;
        MaskedResidual r = masked_residual(OperatorMatrix(b, residual), 1);
        CHECK(r.masked_norm < 1e-12);
        // {K, a†} = 0 exactly
        Matrix anti = k * l.raising.entries() + l.raising.entries() * k;
        CHECK(anti.norm() == 0.0);
    }
}

TEST_CASE("operator matrix rejects bad input") {
    FockBasis b = make_fock_space(2, 1);
    CHECK_THROWS_AS(OperatorMatrix(b, Matrix::Zero(3, 3)), InvalidArgument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(OperatorMatrix(b, bad), InvalidArgument);
    Matrix rect = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(OperatorMatrix(b, rect), InvalidArgument);
}

TEST_CASE("diagonal exponential and kronecker") {
    FockBasis b = make_fock_space(3, 3);
    OperatorMatrix k = klein_operator(b);
    OperatorMatrix e = diagonal_exponential(k, Complex(0.0, kPi));
    for (int n = 0; n < 3; ++n)
        CHECK(std::abs(e.entries()(n, n) - std::exp(Complex(0.0, kPi) * k.entries()(n, n))) < 1e-15);

    OperatorMatrix id2 = identity_operator(make_fock_space(2, 1));
    OperatorMatrix kk = kronecker(k, id2);
    CHECK(kk.dim() == 6);
    CHECK(kk.entries()(0, 0) == k.entries()(0, 0));
    CHECK(kk.entries()(2, 2) == k.entries()(1, 1));
}
