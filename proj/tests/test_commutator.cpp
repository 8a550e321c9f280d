#include "oracles/oracles.hpp"
#include "seifertvol/commutator.hpp"
#include "seifertvol/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace seifertvol;

namespace {

constexpr double kPi = std::numbers::pi;

oracle::M2 o(const Matrix2& m) { return {m.a, m.b, m.c, m.d}; }

// Residual recomputed with the oracle's own arithmetic, in the plain (not PSL) sense.
double plain_residual(const FactorPair& f, const Matrix2& target) {
    auto c = oracle::comm(o(f.a), o(f.b));
    auto t = o(target);
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::fabs(c[i] - t[i]));
    return r;
}

void check_unimodular(const FactorPair& f) {
    CHECK(std::fabs(f.a.det() - 1) <= 1e-12);
    CHECK(std::fabs(f.b.det() - 1) <= 1e-12);
}

}  // namespace

TEST_CASE("canonical matrices") {
    auto e = elliptic_canonical(2.0, 0.5);
    CHECK(e.det() == doctest::Approx(1));
    CHECK(e.b == doctest::Approx(2 * std::sin(0.5)));
    auto h = hyperbolic_canonical(0.5, 1.0);
    CHECK(h.det() == doctest::Approx(1));
    CHECK(h.c == doctest::Approx(std::sinh(1.0) / 0.5));
    CHECK(parabolic_canonical(3, true).b == -3);
}

TEST_CASE("elliptic family residuals over the grid") {
    for (double lambda : {0.25, 1.0, 4.0})
        for (int i = 1; i <= 30; ++i) {
            double theta = 0.1 * i;
            auto f = factor_elliptic(lambda, theta);
            CHECK(plain_residual(f, elliptic_canonical(lambda, theta)) <= 1e-9);
            check_unimodular(f);
        }
    // the last accepted angle: factors are of size ~1e6, so only a relative residual is meaningful
    auto edge = factor_elliptic(1.0, kPi - 1e-6);
    CHECK(plain_residual(edge, elliptic_canonical(1.0, kPi - 1e-6)) <= 1e-15 * std::pow(edge.a.norm_inf() * edge.b.norm_inf(), 2));
    auto tiny = factor_elliptic(1.0, 1e-3);
    CHECK((tiny.a - Matrix2::identity()).norm_inf() < 0.1);
    CHECK((tiny.b - Matrix2::identity()).norm_inf() < 0.1);
    CHECK(plain_residual(tiny, elliptic_canonical(1.0, 1e-3)) <= 1e-10);
    CHECK(plain_residual(factor_elliptic(1.0, kPi / 2), elliptic_canonical(1.0, kPi / 2)) <= 1e-10);
    CHECK_THROWS_AS(factor_elliptic(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(factor_elliptic(1.0, kPi - 1e-7), DomainError);
    CHECK_THROWS_AS(factor_elliptic(-1.0, 1.0), DomainError);
}

TEST_CASE("hyperbolic family residuals over the grid") {
    for (double lambda : {0.25, 1.0, 4.0})
        for (int i = 1; i <= 30; ++i) {
            double tau = 0.1 * i;
            auto f = factor_hyperbolic(lambda, tau);
            CHECK(plain_residual(f, hyperbolic_canonical(lambda, tau)) <= 1e-9);
            check_unimodular(f);
        }
    auto one = factor_hyperbolic(1.0, 1.0);
    CHECK(plain_residual(one, hyperbolic_canonical(1.0, 1.0)) <= 1e-10);
    CHECK(commutator(one.a, one.b).trace() == doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-9));
    double prev = HUGE_VAL;
    for (int n = 1; n <= 20; ++n) {
        auto f = factor_hyperbolic(1.0, std::ldexp(1.0, -n));
        double size = std::max((f.a - Matrix2::identity()).norm_inf(), (f.b - Matrix2::identity()).norm_inf());
        CHECK(size < prev);
        prev = size;
    }
    CHECK(prev < 1e-2);
    CHECK_THROWS_AS(factor_hyperbolic(1.0, 0.0), DomainError);
}

TEST_CASE("parabolic family") {
    auto f = factor_parabolic(1.0, false);
    CHECK(f.a.a == 1);
    CHECK(f.a.b == 2);
    CHECK(f.a.c == 0);
    CHECK(f.a.d == 1);
    auto c = commutator(f.a, f.b);
    CHECK(c.a == doctest::Approx(1).epsilon(1e-15));
    CHECK(c.b == doctest::Approx(1).epsilon(1e-15));
    CHECK(std::fabs(c.c) < 1e-15);
    CHECK(c.d == doctest::Approx(1).epsilon(1e-15));
    for (double u : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
        for (bool inv : {false, true}) {
            auto g = factor_parabolic(u, inv);
            CHECK(plain_residual(g, parabolic_canonical(u, inv)) <= 1e-9);
            check_unimodular(g);
        }
    auto swapped = factor_parabolic(1.0, true);
    auto ci = commutator(swapped.a, swapped.b);
    CHECK(std::fabs(ci.b + 1) < 1e-12);
    CHECK(std::fabs(ci.a - 1) < 1e-12);
    auto small = factor_parabolic(1e-8, false);
    CHECK((small.a - Matrix2::identity()).norm_inf() < 1e-3);
    CHECK((small.b - Matrix2::identity()).norm_inf() < 1e-3);
    CHECK_THROWS_AS(factor_parabolic(0.0, false), DomainError);
}

TEST_CASE("factors shrink with the target near the identity") {
    double prev = HUGE_VAL;
    for (int n = 2; n <= 20; ++n) {
        double theta = std::ldexp(1.0, -n);
        auto f = factor_elliptic(1.0, theta);
        double size = std::max((f.a - Matrix2::identity()).norm_inf(), (f.b - Matrix2::identity()).norm_inf());
        CHECK(size < prev);
        CHECK(size < 4 * std::sqrt(theta));
        prev = size;
    }
}

TEST_CASE("canonical form reconstructs the input") {
    std::mt19937_64 rng(31);
    int counts[5] = {};
    for (int i = 0; i < 200; ++i) {
        auto r = oracle::random_sl2(rng, 1.5);
        Matrix2 m{r[0], r[1], r[2], r[3]};
        auto cf = canonical_form(m);
        counts[static_cast<int>(cf.kind)]++;
        auto s = cf.conjugator;
        CHECK(oracle::dist(o(s * cf.canonical() * s.inverse()), o(m)) <= 1e-8 * std::max(1.0, m.norm_inf()));
        CHECK(cf.lambda > 0);
    }
    CHECK(counts[static_cast<int>(ConjKind::elliptic)] > 0);
    CHECK(counts[static_cast<int>(ConjKind::hyperbolic)] > 0);

    auto e = canonical_form(Matrix2::rotation(0.25));
    CHECK(e.kind == ConjKind::elliptic);
    CHECK(e.lambda == doctest::Approx(1));
    // k(1/4) = -C(1, 3 pi / 4): the normal form fixes the rotation direction
    CHECK(e.theta == doctest::Approx(3 * kPi / 4));
    CHECK(canonical_form(Matrix2::rotation(-0.25)).theta == doctest::Approx(kPi / 4));

    auto p = canonical_form({1, -2, 0, 1});
    CHECK(p.kind == ConjKind::parabolic_negative);
    CHECK(p.inverted);
    CHECK(p.u == doctest::Approx(2));

    auto q = canonical_form({1, 0, -3, 1});
    CHECK(q.kind == ConjKind::parabolic_positive);
    CHECK_FALSE(q.inverted);
    CHECK(q.u == doctest::Approx(3));

    CHECK_THROWS_AS(canonical_form(-Matrix2::identity()), DomainError);
}

TEST_CASE("factor of random matrices") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        auto r = oracle::random_sl2(rng, 1.5);
        Matrix2 m{r[0], r[1], r[2], r[3]};
        auto f = factor(m);
        CHECK(oracle::dist(oracle::comm(o(f.a), o(f.b)), r) <= 1e-8);
        check_unimodular(f);
    }
    CHECK_THROWS_AS(factor(-Matrix2::identity()), DomainError);
    CHECK_THROWS_AS(factor(Matrix2::identity()), DomainError);
    // parabolic inputs, both directions
    for (double u : {0.3, 4.0}) {
        CHECK(oracle::dist(oracle::comm(o(factor({1, u, 0, 1}).a), o(factor({1, u, 0, 1}).b)), {1, u, 0, 1}) <= 1e-9 * u);
        auto g = factor({1, 0, u, 1});
        CHECK(oracle::dist(oracle::comm(o(g.a), o(g.b)), {1, 0, u, 1}) <= 1e-9 * std::max(1.0, u));
    }
}

TEST_CASE("lifted factorization near the identity") {
    for (double r : {0.01, -0.02, 0.03}) {
        auto f = factor_lifted(LiftedMatrix::rotation(r));
        CHECK(f.deck_shift == 0);
        CHECK(f.residual <= 1e-7);
        auto c = compose(commutator(f.a, f.b), LiftedMatrix::rotation(static_cast<double>(f.deck_shift)));
        CHECK(lifted_distance(c, LiftedMatrix::rotation(r)) <= 1e-7);
    }
    // lifts of -I neighbourhoods and of shifted sheets
    auto g = factor_lifted(LiftedMatrix::rotation(1.02));
    CHECK(g.deck_shift == 1);
    auto h = factor_lifted(compose(LiftedMatrix::near_identity({1.0, 0.05, 0.0, 1.0}), LiftedMatrix::rotation(-2)));
    CHECK(h.deck_shift == -2);
    CHECK(h.residual <= 1e-7);
    auto hyp = factor_lifted(LiftedMatrix::near_identity(hyperbolic_canonical(1.0, 0.05)));
    CHECK(hyp.deck_shift == 0);
    CHECK(factor_lifted(LiftedMatrix::near_identity(parabolic_canonical(0.01, false))).residual <= 1e-7);

    CHECK_THROWS_AS(factor_lifted(LiftedMatrix::identity()), DomainError);
    CHECK_THROWS_AS(factor_lifted(LiftedMatrix::rotation(0.4)), DomainError);
    CHECK_THROWS_AS(factor_lifted(LiftedMatrix::rotation(1.0)), DomainError);
}

TEST_CASE("lifted factors depend continuously on the target") {
    // Along a smooth path the factors should not jump.
    Matrix2 prev_a, prev_b;
    for (int i = 0; i <= 200; ++i) {
        double r = 0.005 + 0.0001 * i;
        auto f = factor_lifted(LiftedMatrix::rotation(r));
        if (i > 0) {
            CHECK(psl_distance(f.a.m, prev_a) < 1e-2);
            CHECK(psl_distance(f.b.m, prev_b) < 1e-2);
        }
        prev_a = f.a.m;
        prev_b = f.b.m;
    }
}

TEST_CASE("adjacent grid points give nearby factors") {
    const double h = 0.1;
    for (double lambda : {0.25, 1.0, 4.0}) {
        FactorPair pe = factor_elliptic(lambda, h), ph = factor_hyperbolic(lambda, h);
        for (int i = 2; i <= 30; ++i) {
            FactorPair e = factor_elliptic(lambda, h * i), y = factor_hyperbolic(lambda, h * i);
            // relative to the factor size: the elliptic factors grow like tan(theta / 2)
            CHECK((e.a - pe.a).norm_inf() <= 10 * h * std::max(1.0, e.a.norm_inf()));
            CHECK((e.b - pe.b).norm_inf() <= 10 * h * std::max(1.0, e.b.norm_inf()));
            CHECK((y.a - ph.a).norm_inf() <= 10 * h * std::max(1.0, y.a.norm_inf()));
            CHECK((y.b - ph.b).norm_inf() <= 10 * h * std::max(1.0, y.b.norm_inf()));
            pe = e;
            ph = y;
        }
    }
}
