#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbt/linalg.hpp"
#include "qbt/rng.hpp"

using namespace qbt;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a(i, j) = rng.normal_cx();
    return a;
}

Matrix random_hermitian(Rng& rng, std::size_t n) {
    Matrix a = random_matrix(rng, n, n);
    return hermitian_part(a);
}

} // namespace

TEST_CASE("hermitian_eig: identity and diagonal") {
    HermEig e = hermitian_eig(Matrix::identity(3));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    Matrix d = Matrix::diag({3.0, 1.0, 2.0});
    HermEig ed = hermitian_eig(d);
    CHECK(ed.values[0] == doctest::Approx(1.0));
    CHECK(ed.values[1] == doctest::Approx(2.0));
    CHECK(ed.values[2] == doctest::Approx(3.0));
}

TEST_CASE("hermitian_eig: 2x2 by characteristic polynomial") {
    Matrix a(2, 2);
    a(0, 0) = 2.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 2.0;
    HermEig e = hermitian_eig(a);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("hermitian_eig: residual and unitarity on random input") {
    Rng rng(42);
    for (std::size_t n : {5, 23, 60}) {
        Matrix a = random_hermitian(rng, n);
        HermEig e = hermitian_eig(a);
        Matrix av = mul(a, e.vectors);
        Matrix vl = e.vectors;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vl(i, j) *= e.values[j];
        CHECK(norm_max(av - vl) <= 1e-10 * std::max(1.0, norm_max(a)));
        Matrix vv = mul(adjoint(e.vectors), e.vectors);
        CHECK(norm_max(vv - Matrix::identity(n)) <= 1e-10);
    }
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(a), Error);
}

TEST_CASE("svd: rank one and |diagonal|") {
    // u v* with ||u|| = 2, ||v|| = 3
    Matrix a(3, 3);
    const double u[3] = {2.0, 0.0, 0.0};
    const double v[3] = {0.0, 3.0, 0.0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = u[i] * v[j];
    Svd s = svd(a);
    CHECK(s.values[0] == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(s.values[1] <= 1e-12);

    Matrix d = Matrix::diag({-5.0, 2.0});
    Svd sd = svd(d);
    CHECK(sd.values[0] == doctest::Approx(5.0));
    CHECK(sd.values[1] == doctest::Approx(2.0));
}

TEST_CASE("svd: s_k(A) = s_k(A*) on random 10x10") {
    Rng rng(7);
    Matrix a = random_matrix(rng, 10, 10);
    auto s1 = singular_values(a);
    auto s2 = singular_values(adjoint(a));
    for (std::size_t i = 0; i < s1.size(); ++i)
        CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-10));
}

TEST_CASE("svd: reconstruction and small-value accuracy") {
    Rng rng(11);
    // matrix with prescribed tiny singular values via diagonal scaling
    const std::size_t n = 24;
    Matrix a = random_matrix(rng, n, n);
    Svd qa = svd(a);
    Matrix b(n, n);
    // B = U diag(k^{-6}) V*
    std::vector<double> target(n);
    for (std::size_t k = 0; k < n; ++k) target[k] = std::pow(k + 1.0, -6.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cx sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += qa.u(i, k) * target[k] * std::conj(qa.v(j, k));
            b(i, j) = sum;
        }
    Svd sb = svd(b);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(sb.values[k] - target[k]) <= 1e-12 + 1e-10 * target[k]);
    // reconstruction
    Matrix rec(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cx sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += sb.u(i, k) * sb.values[k] * std::conj(sb.v(j, k));
            rec(i, j) = sum;
        }
    CHECK(norm_max(rec - b) <= 1e-10 * std::max(norm_max(b), 1e-30));
}

TEST_CASE("svd: product inequalities s_k(AB) <= ||B|| s_k(A)") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix a = random_matrix(rng, 12, 12);
        Matrix b = random_matrix(rng, 12, 12);
        auto sa = singular_values(a);
        auto sb = singular_values(b);
        auto sab = singular_values(mul(a, b));
        const double nb = sb[0];
        for (std::size_t k = 0; k < sa.size(); ++k)
            CHECK(sab[k] <= nb * sa[k] * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("solve: identity, diagonal, SPD residual") {
    Matrix b(3, 2);
    b(0, 0) = 1.0; b(1, 1) = 2.0; b(2, 0) = cx(0, 1);
    Matrix x = solve(Matrix::identity(3), b);
    CHECK(norm_max(x - b) <= 1e-15);

    Matrix d = Matrix::diag({2.0, 4.0, 8.0});
    Matrix xd = solve(d, b);
    CHECK(std::abs(xd(0, 0) - cx(0.5)) <= 1e-15);
    CHECK(std::abs(xd(1, 1) - cx(0.5)) <= 1e-15);

    Rng rng(3);
    Matrix g = random_matrix(rng, 20, 20);
    Matrix spd = mul(adjoint(g), g) + Matrix::identity(20);
    Matrix rhs = random_matrix(rng, 20, 3);
    Matrix xs = solve(spd, rhs);
    CHECK(norm_max(mul(spd, xs) - rhs) <= 1e-10 * norm_max(spd) * std::max(1.0, norm_max(xs)));
}

TEST_CASE("solve: rejects singular systems with condition estimate") {
    Matrix s(2, 2);
    s(0, 0) = 1.0; s(0, 1) = 1.0;
    s(1, 0) = 1.0; s(1, 1) = 1.0 + 1e-15;
    Matrix b(2, 1);
    b(0, 0) = 1.0;
    CHECK_THROWS_AS(solve(s, b), IllConditionedError);
}

TEST_CASE("eigenvalues: agrees with Hermitian path and triangular case") {
    Matrix t(3, 3);
    t(0, 0) = cx(1, 1); t(0, 1) = 5.0; t(0, 2) = -2.0;
    t(1, 1) = cx(-2, 0.5); t(1, 2) = 1.0;
    t(2, 2) = 4.0;
    auto ev = eigenvalues(t);
    std::sort(ev.begin(), ev.end(), [](cx a, cx b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] - cx(-2, 0.5)) <= 1e-10);
    CHECK(std::abs(ev[1] - cx(1, 1)) <= 1e-10);
    CHECK(std::abs(ev[2] - cx(4, 0)) <= 1e-10);

    Rng rng(21);
    Matrix h = random_hermitian(rng, 15);
    auto evh = eigenvalues(h);
    std::sort(evh.begin(), evh.end(), [](cx a, cx b) { return a.real() < b.real(); });
    HermEig ref = hermitian_eig(h);
    for (std::size_t i = 0; i < 15; ++i) {
        CHECK(std::abs(evh[i].imag()) <= 1e-9);
        CHECK(evh[i].real() == doctest::Approx(ref.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("eigenvalues: characteristic residual on random complex matrix") {
    Rng rng(31);
    Matrix a = random_matrix(rng, 20, 20);
    auto ev = eigenvalues(a);
    REQUIRE(ev.size() == 20);
    for (const cx& lambda : ev) {
        Matrix shifted = a;
        for (std::size_t i = 0; i < 20; ++i) shifted(i, i) -= lambda;
        auto s = singular_values(shifted);
        CHECK(s.back() <= 1e-8 * s.front());
    }
}

TEST_CASE("hermitian_pencil_eig: A x = lambda B x") {
    Rng rng(5);
    const std::size_t n = 12;
    Matrix a = random_hermitian(rng, n);
    Matrix g = random_matrix(rng, n, n);
    Matrix b = mul(adjoint(g), g) + Matrix::identity(n);
    HermEig e = hermitian_pencil_eig(a, b);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix x(n, 1);
        for (std::size_t i = 0; i < n; ++i) x(i, 0) = e.vectors(i, j);
        Matrix r = mul(a, x) - cx(e.values[j]) * mul(b, x);
        CHECK(norm_max(r) <= 1e-9 * (norm_max(a) + std::abs(e.values[j]) * norm_max(b)));
    }
}

TEST_CASE("kernel_basis and range_basis") {
    Matrix c(2, 5);
    c(0, 0) = 1.0; c(0, 4) = -1.0;
    c(1, 2) = cx(0, 2.0);
    Matrix z = kernel_basis(c);
    CHECK(z.cols() == 3);
    CHECK(norm_max(mul(c, z)) <= 1e-12);
    Matrix ortho = mul(adjoint(z), z);
    CHECK(norm_max(ortho - Matrix::identity(3)) <= 1e-12);

    Matrix a(4, 3);
    a(0, 0) = 1.0; a(1, 0) = 1.0;
    a(0, 1) = 2.0; a(1, 1) = 2.0;  // dependent column
    a(2, 2) = 1.0;
    Matrix q = range_basis(a);
    CHECK(q.cols() == 2);
}
