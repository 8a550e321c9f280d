#include "oracles/oracles.hpp"
#include "seifertvol/box_qp.hpp"
#include "seifertvol/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace seifertvol;

namespace {

BoxQP<Rational> rational_qp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& c) {
    BoxQP<Rational> q;
    q.a = RationalMatrix(c.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) q.a(i, j) = a[i][j];
    q.c = c;
    return q;
}

}  // namespace

TEST_CASE("one-dimensional convex and concave boxes") {
    auto r = maximize_box_qp(rational_qp({{1}}, {3}));
    CHECK(r.value == 9);
    CHECK(abs(r.maximizer[0]) == 3);
    auto s = maximize_box_qp(rational_qp({{-1}}, {3}));
    CHECK(s.value == 0);
    CHECK(s.maximizer[0] == 0);
}

TEST_CASE("inverse of [[m,-1],[-1,m]] attains 2c^2/(m-1) at a corner") {
    for (long m = 2; m <= 6; ++m)
        for (long c = 1; c <= 3; ++c) {
            Rational s = Rational(1, m * m - 1);
            auto r = maximize_box_qp(rational_qp({{s * m, s}, {s, s * m}}, {c, c}));
            CHECK(r.value == Rational(2 * c * c, m - 1));
            CHECK(abs(r.maximizer[0]) == c);
            CHECK(r.maximizer[0] == r.maximizer[1]);
        }
}

TEST_CASE("ties resolve to the lexicographically smallest maximizer") {
    auto r = maximize_box_qp(rational_qp({{1, 0}, {0, 1}}, {2, 2}));
    CHECK(r.value == 8);
    CHECK(r.maximizer == std::vector<Rational>{-2, -2});
}

TEST_CASE("every active-set pattern is tried") {
    auto r = maximize_box_qp(rational_qp({{1, 0, 0}, {0, -1, 0}, {0, 0, 2}}, {1, 1, 1}));
    CHECK(r.patterns == 27);
    CHECK(r.value == 3);
}

TEST_CASE("equality constraints restrict the feasible set") {
    // maximize y0^2 + y1^2 with y0 + y1 = 0 inside |y| <= (1, 3)
    auto q = rational_qp({{1, 0}, {0, 1}}, {1, 3});
    q.equality = RationalMatrix(1, 2);
    q.equality(0, 0) = 1;
    q.equality(0, 1) = 1;
    auto r = maximize_box_qp(q);
    CHECK(r.value == 2);
    CHECK(r.maximizer[0] == -r.maximizer[1]);
}

TEST_CASE("guards") {
    BoxQP<double> q;
    q.a = RealMatrix(17, 17);
    q.c.assign(17, 1.0);
    CHECK_THROWS_AS(maximize_box_qp(q), DomainError);
    CHECK_THROWS_AS(maximize_box_qp(rational_qp({{1}}, {-1})), DomainError);
}

TEST_CASE("random indefinite instances agree with the refined grid oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2, 2), rad(0.2, 2.0);
    for (int t = 0; t < 10; ++t) {
        BoxQP<double> q;
        q.a = RealMatrix(3, 3);
        oracle::Dense d(3, std::vector<double>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) d[i][j] = d[j][i] = q.a(i, j) = q.a(j, i) = u(rng);
        for (int i = 0; i < 3; ++i) q.c.push_back(rad(rng));
        double got = maximize_box_qp(q).value;
        double want = oracle::grid_box_max(d, q.c);
        CHECK(got >= want - 1e-9);
        CHECK(std::fabs(got - want) < 1e-6);
    }
}

TEST_CASE("exact and float paths agree") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        BoxQP<Rational> q;
        BoxQP<double> f;
        q.a = RationalMatrix(4, 4);
        f.a = RealMatrix(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                Rational x(std::uniform_int_distribution<long>(-9, 9)(rng), 4);
                q.a(i, j) = q.a(j, i) = x;
                f.a(i, j) = f.a(j, i) = x.to_double();
            }
        for (int i = 0; i < 4; ++i) {
            Rational c(std::uniform_int_distribution<long>(1, 5)(rng), 2);
            q.c.push_back(c);
            f.c.push_back(c.to_double());
        }
        CHECK(maximize_box_qp(q).value.to_double() == doctest::Approx(maximize_box_qp(f).value).epsilon(1e-10));
    }
}
