#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qss/qmath.hpp"
#include "qss/qstate.hpp"
#include "test_support.hpp"

using namespace qss::qmath;
using qss::Rng;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

CVector ket0() { return CVector{1.0, 0.0}; }
CVector ket1() { return CVector{0.0, 1.0}; }
CVector plus() { return CVector{kInvSqrt2, kInvSqrt2}; }

CMatrix hadamard() { return CMatrix{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}; }

}  // namespace

TEST_CASE("tensor places the left operand in the most significant position") {
    const CVector v = tensor(ket0(), ket1());
    REQUIRE(v.dim() == 4);
    CHECK(v[1] == Amplitude(1.0));
    CHECK(v.norm() == doctest::Approx(1.0));

    CVector ghz(8);
    ghz[0] = kInvSqrt2;
    ghz[7] = kInvSqrt2;
    const CVector psi0 = tensor(ghz, ket0());
    REQUIRE(psi0.dim() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        const double expected = (i == 0 || i == 14) ? kInvSqrt2 : 0.0;
        CHECK(std::abs(psi0[i] - expected) < 1e-15);
    }

    CHECK(max_abs_diff(tensor(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) == 0.0);
}

TEST_CASE("tensor rejects results beyond the maximum dimension") {
    CHECK_THROWS_AS(tensor(CVector(16), CVector(8)), ShapeError);
    CHECK_THROWS_AS(tensor(CMatrix::identity(8), CMatrix::identity(16)), ShapeError);
    CHECK_THROWS_AS(CVector(65), ShapeError);
}

TEST_CASE("inner, apply and matmul basics") {
    CHECK(inner(ket0(), ket1()) == Amplitude(0.0));
    CHECK(std::abs(inner(plus(), plus()) - 1.0) < 1e-15);
    CHECK(max_abs_diff(apply(hadamard(), ket0()), plus()) < 1e-15);
    CHECK(max_abs_diff(matmul(hadamard(), hadamard()), CMatrix::identity(2)) < 1e-15);
    CHECK_THROWS_AS(apply(CMatrix::identity(4), ket0()), ShapeError);
    CHECK_THROWS_AS(matmul(CMatrix(2, 3), CMatrix(2, 3)), ShapeError);
    CHECK_THROWS_AS(inner(ket0(), CVector(4)), ShapeError);

    const Amplitude i{0.0, 1.0};
    // conjugate-linear in the first slot
    CHECK(std::abs(inner(i * ket0(), ket0()) - (-i)) < 1e-15);
}

TEST_CASE("inner(u,u) is the squared norm") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const CVector u = qss::testing::random_vector(1 + rng.next() % 64, rng);
        const Amplitude s = inner(u, u);
        CHECK(std::abs(s.imag()) <= 1e-12);
        CHECK(s.real() >= 0.0);
        CHECK(std::abs(s.real() - u.norm_squared()) <= 1e-12 * std::max(1.0, u.norm_squared()));
    }
}

TEST_CASE("tensor is associative") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const CVector a = qss::testing::random_unit_vector(2, rng);
        const CVector b = qss::testing::random_unit_vector(4, rng);
        const CVector c = qss::testing::random_unit_vector(2 + rng.next() % 7, rng);
        CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-14);
    }
}

TEST_CASE("hermitian_eigen on Pauli matrices") {
    const auto z = hermitian_eigen(CMatrix{{1.0, 0.0}, {0.0, -1.0}});
    CHECK(z.values[0] == doctest::Approx(1.0));
    CHECK(z.values[1] == doctest::Approx(-1.0));

    const auto x = hermitian_eigen(CMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(x.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
    const CVector v0{x.vectors(0, 0), x.vectors(1, 0)};
    const CVector v1{x.vectors(0, 1), x.vectors(1, 1)};
    CHECK(phase_distance(v0, plus()) < 1e-12);
    CHECK(phase_distance(v1, CVector{kInvSqrt2, -kInvSqrt2}) < 1e-12);

    const Amplitude i{0.0, 1.0};
    const auto y = hermitian_eigen(CMatrix{{0.0, -i}, {i, 0.0}});
    CHECK(y.values[0] == doctest::Approx(1.0));
    CHECK(phase_distance(CVector{y.vectors(0, 0), y.vectors(1, 0)}, CVector{kInvSqrt2, i * kInvSqrt2}) < 1e-12);
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next() % 16;
        const CMatrix h = qss::testing::random_hermitian(n, rng);
        const auto eig = hermitian_eigen(h);
        REQUIRE(eig.values.size() == n);
        for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);

        const CMatrix recon = matmul(matmul(eig.vectors, CMatrix::diagonal(eig.values)), adjoint(eig.vectors));
        CHECK(max_abs_diff(recon, h) <= 1e-9);
        CHECK(unitary_deviation(eig.vectors) <= 1e-9);

        double sum = 0.0;
        for (double v : eig.values) sum += v;
        CHECK(std::abs(sum - h.trace().real()) <= 1e-9);
    }
}

TEST_CASE("hermitian_eigen handles the largest supported dimension and degenerate spectra") {
    Rng rng(14);
    const CMatrix h = qss::testing::random_hermitian(64, rng);
    const auto eig = hermitian_eigen(h);
    CHECK(max_abs_diff(matmul(matmul(eig.vectors, CMatrix::diagonal(eig.values)), adjoint(eig.vectors)), h) <= 1e-9);

    const auto id = hermitian_eigen(CMatrix::identity(8));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input with the measured deviation") {
    const CMatrix m{{1.0, 0.5}, {0.0, 1.0}};
    try {
        hermitian_eigen(m);
        FAIL("expected NotHermitianError");
    } catch (const NotHermitianError& e) {
        CHECK(e.deviation() == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(hermitian_eigen(CMatrix(2, 3)), ShapeError);
}

TEST_CASE("trace_norm examples") {
    const std::vector<double> d{3.0, -4.0};
    CHECK(trace_norm(CMatrix::diagonal(d)) == doctest::Approx(7.0));
    CHECK(trace_norm(CMatrix::zero(3, 3)) == 0.0);

    // 1/2 (|+><+| - |0><0|): eigenvalues +-1/(2 sqrt2), oracle value 0.7071067811865475
    const CMatrix m = 0.5 * (projector(plus()) - projector(ket0()));
    CHECK(std::abs(trace_norm(m) - 0.7071067811865475) <= 1e-12);
    CHECK_THROWS_AS(trace_norm(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitianError);
}

TEST_CASE("trace_norm is unitarily invariant") {
    Rng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next() % 15;
        const CMatrix h = qss::testing::random_hermitian(n, rng);
        const CMatrix u = qss::testing::random_unitary(n, rng);
        const CMatrix rotated = matmul(matmul(u, h), adjoint(u));
        CHECK(std::abs(trace_norm(rotated, 1e-9) - trace_norm(h)) <= 1e-8);
    }
}

TEST_CASE("partial_trace of the GHZ state leaves a maximally mixed qubit") {
    const CMatrix rho = qss::qstate::density(qss::qstate::ghz_state());
    const std::vector<std::size_t> dims{2, 2, 2};
    const std::vector<std::size_t> keep_a{0};
    CHECK(max_abs_diff(partial_trace(rho, dims, keep_a), 0.5 * CMatrix::identity(2)) <= 1e-15);

    const std::vector<std::size_t> keep_all{0, 1, 2};
    CHECK(max_abs_diff(partial_trace(rho, dims, keep_all), rho) == 0.0);
}

TEST_CASE("partial_trace of the entangled attack state") {
    // 1/2 (|00>|00> + |01>|01> + |10>|10> - |11>|11>) over AB,CE
    CVector psi1(16);
    psi1[0] = 0.5;
    psi1[5] = 0.5;
    psi1[10] = 0.5;
    psi1[15] = -0.5;
    const CMatrix rho = projector(psi1);
    const std::vector<std::size_t> dims{2, 2, 2, 2};

    const std::vector<std::size_t> drop_e{0, 1, 2};
    const CMatrix abc = partial_trace(rho, dims, drop_e);
    CHECK(std::abs(abc.trace() - 1.0) <= 1e-12);
    CHECK(numerical_rank(abc) == 2);  // E copies B

    const std::vector<std::size_t> drop_ce{0, 1};
    const CMatrix ab = partial_trace(rho, dims, drop_ce);
    CHECK(std::abs(ab.trace() - 1.0) <= 1e-12);
    CHECK(numerical_rank(ab) == 4);
    CHECK(max_abs_diff(ab, 0.25 * CMatrix::identity(4)) <= 1e-15);
}

TEST_CASE("partial_trace rejects inconsistent factor dimensions") {
    const std::vector<std::size_t> dims{2, 3};
    const std::vector<std::size_t> keep{0};
    CHECK_THROWS_AS(partial_trace(CMatrix::identity(4), dims, keep), ShapeError);
    const std::vector<std::size_t> bad_keep{1, 0};
    const std::vector<std::size_t> dims22{2, 2};
    CHECK_THROWS_AS(partial_trace(CMatrix::identity(4), dims22, bad_keep), ShapeError);
}

TEST_CASE("partial_trace factors product states") {
    Rng rng(16);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t da = 2 + rng.next() % 3;
        const std::size_t db = 2 + rng.next() % 4;
        const CMatrix rho_a = qss::testing::random_density(da, 1 + rng.next() % da, rng);
        const CMatrix rho_b = qss::testing::random_density(db, 1 + rng.next() % db, rng);
        const CMatrix joint = tensor(rho_a, rho_b);
        const std::vector<std::size_t> dims{da, db};
        const std::vector<std::size_t> keep{0};
        const CMatrix expected = rho_b.trace() * rho_a;
        CHECK(max_abs_diff(partial_trace(joint, dims, keep), expected) <= 1e-12);
        CHECK(std::abs(partial_trace(joint, dims, keep).trace() - joint.trace()) <= 1e-12);
    }
}

TEST_CASE("cross_gram_is_zero") {
    const std::vector<CVector> zero{ket0()};
    const std::vector<CVector> one{ket1()};
    const std::vector<CVector> plus_set{plus()};

    const auto orth = cross_gram_is_zero(zero, one, 1e-12);
    CHECK(orth.orthogonal);
    CHECK(orth.max_overlap == 0.0);

    const auto overlap = cross_gram_is_zero(zero, plus_set, 1e-12);
    CHECK_FALSE(overlap.orthogonal);
    CHECK(overlap.max_overlap == doctest::Approx(kInvSqrt2));

    const std::vector<CVector> empty;
    CHECK_THROWS_AS(cross_gram_is_zero(empty, one, 1e-12), std::invalid_argument);
}

TEST_CASE("complete_unitary extends orthonormal columns") {
    Rng rng(17);
    const CVector a = qss::testing::random_unit_vector(6, rng);
    CVector b = qss::testing::random_vector(6, rng);
    b = (b - inner(a, b) * a).normalized();
    const std::vector<CVector> cols{a, b};
    const CMatrix u = complete_unitary(cols, 6);
    CHECK(unitary_deviation(u) <= 1e-12);
    for (std::size_t r = 0; r < 6; ++r) {
        CHECK(std::abs(u(r, 0) - a[r]) == 0.0);
        CHECK(std::abs(u(r, 1) - b[r]) == 0.0);
    }
}
