#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"
#include "seifertvol/errors.hpp"
#include "seifertvol/representation.hpp"
#include "seifertvol/volume.hpp"

#include <doctest.h>

#include <cmath>

using namespace seifertvol;

namespace {

XiVector xi2(Rational p, Rational m) { return XiVector::from_exact({{"+", p}, {"-", m}}); }

XiVector constant_xi(const FormattedGraphManifold& m, Rational v) {
    std::map<std::string, Rational> x;
    for (const auto& [id, _] : m.vertices) x[id] = v;
    return XiVector::from_exact(x);
}

}  // namespace

TEST_CASE("volume of the twisted doubling matches the closed form") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 30; ++t) {
        auto m = twisted_doubling(2, 3, 2, 1, 1);
        Rational p = gen::rational(rng, 7, 5), q = gen::rational(rng, 7, 5);
        auto v = volume_from_xi(m, xi2(p, q));
        CHECK(v.exact);
        CHECK(v.coefficient.raw() == oracle::twisted_volume(mpq_class(1, 2), mpq_class(3, 2), 2, p.raw(), q.raw()));
    }
    auto v = volume_from_xi(twisted_doubling(1, 2, 1, 3, 2), xi2(1, 1));
    CHECK(v.coefficient == 8);
    CHECK(v.str() == "8/1 * pi^2");
    CHECK(volume_from_xi(twisted_doubling(1, 2, 1, 3, 2), xi2(0, 0)).coefficient == 0);
}

TEST_CASE("volume is zero on the kernel and invariant under kernel shifts") {
    auto m = twisted_doubling(1, 1, 1, 0, 1);  // E = [[1,-1],[-1,1]]
    CHECK(volume_from_xi(m, xi2(5, 5)).coefficient == 0);
    CHECK(volume_from_xi(m, xi2(2, Rational(1, 3))).coefficient == volume_from_xi(m, xi2(Rational(7, 2), Rational(11, 6))).coefficient);
}

TEST_CASE("float xi gives a float volume") {
    auto m = twisted_doubling(1, 2, 1, 3, 2);
    auto v = volume_from_xi(m, XiVector::from_real({{"+", 0.5}, {"-", std::sqrt(2.0)}}));
    CHECK_FALSE(v.exact);
    double want = 4 * (2 * 0.25 - 2 * 0.5 * std::sqrt(2.0) + 2 * 2.0);
    CHECK(v.real_coefficient == doctest::Approx(want).epsilon(1e-14));
    CHECK_THROWS_AS(volume_from_xi(m, XiVector::from_exact({{"+", 1}})), DomainError);
}

TEST_CASE("Milnor-Wood bounds") {
    auto m = twisted_doubling(2, 2, 1, 3, 2);
    auto inf = mw_bounds(m, uniform_tau(m, std::nullopt));
    CHECK(inf.at("+") == 3);
    // genus g, n boundary tori, tau = 1 everywhere: -chi - n = 2g - 2
    for (long g = 1; g <= 3; ++g) {
        auto c = constant_cyclic(5, Rational(2 - 2 * g - 2), 3, 1);
        for (const auto& [v, bound] : mw_bounds(c, uniform_tau(c, 1L))) CHECK(bound == 2 * g - 2);
    }
    FormattedGraphManifold h;
    h.add_vertex("v", -1, 1);
    h.add_vertex("w", -3, 1);
    h.add_edge("v", "w", 1);
    auto b = mw_bounds(h, uniform_tau(h, 2L));
    CHECK(b.at("v") == Rational(1, 2));
    CHECK(b.at("w") == Rational(5, 2));
    // never negative
    CHECK(mw_bounds(h, uniform_tau(h, 1L)).at("v") == 0);
}

TEST_CASE("Milnor-Wood check") {
    auto m = twisted_doubling(1, 2, 1, 3, 2);
    auto tau = uniform_tau(m, std::nullopt);
    for (const auto& c : check_mw(m, xi2(0, 0), tau)) CHECK(c.pass);
    for (const auto& c : check_mw(m, xi2(1, 1), tau)) {
        CHECK(c.pass);
        CHECK(*c.exact_lhs == 1);
        CHECK(c.residual == 0);
    }
    auto fail = check_mw(m, xi2(2, 0), tau);
    CHECK_FALSE(fail[0].pass);  // "+": |4| > 1
    CHECK(*fail[0].exact_lhs == 4);
    // float xi uses the tolerance
    auto near = check_mw(m, XiVector::from_real({{"+", 1 + 1e-10}, {"-", 1.0}}), tau, 1e-8);
    CHECK(near[0].pass);
    auto far = check_mw(m, XiVector::from_real({{"+", 1 + 1e-6}, {"-", 1.0}}), tau, 1e-8);
    CHECK_FALSE(far[0].pass);
}

TEST_CASE("SV bound of the Mgm family and of constant cyclic manifolds") {
    for (long mm = 2; mm <= 4; ++mm)
        for (long g = 1; g <= 3; ++g) {
            auto sv = sv_upper_bound(twisted_doubling(g, mm, 1, mm * mm - 1, mm));
            CHECK(sv.bound.exact);
            CHECK(sv.bound.coefficient == Rational(8 * (2 * g - 1) * (2 * g - 1), mm - 1));
        }
    // n even and |k| > |2/b|
    CHECK(sv_upper_bound(constant_cyclic(4, -2, 4, 1)).bound.coefficient == 32);
    CHECK(sv_upper_bound(constant_cyclic(6, -1, Rational(-3), 2)).bound.coefficient == Rational(4 * 6, 2));
}

TEST_CASE("SV bound is zero when every chi vanishes and handles singular operators") {
    FormattedGraphManifold m;
    m.add_vertex("a", 0, 3);
    m.add_vertex("b", 0, 1);
    m.add_edge("a", "b", 1);
    CHECK(sv_upper_bound(m).bound.coefficient == 0);

    // E = [[1,-1],[-1,1]] is singular; y = E xi = (t, -t), |t| <= 1, form y^T E^+ y = t^2
    auto s = sv_upper_bound(twisted_doubling(1, 1, 1, 0, 1));
    CHECK(s.bound.coefficient == 4);
}

TEST_CASE("SV bound dominates every Milnor-Wood admissible volume") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 8; ++t) {
        auto m = gen::random_manifold(rng, gen::uniform(rng, 2, 4));
        auto sv = sv_upper_bound(m);
        auto e = build_euler_operator(m);
        auto tau = uniform_tau(m, std::nullopt);
        int admitted = 0;
        for (int s = 0; s < 200 && admitted < 12; ++s) {
            std::map<std::string, Rational> x;
            for (const auto& id : e.index) x[id] = gen::rational(rng, 4, 6);
            auto xi = XiVector::from_exact(x);
            bool ok = true;
            for (const auto& c : check_mw(m, xi, tau)) ok = ok && c.pass;
            if (!ok) continue;
            ++admitted;
            CHECK(abs(volume_from_xi(m, xi).coefficient) <= sv.bound.coefficient);
        }
    }
}

TEST_CASE("virtual realizability is strict") {
    auto m = twisted_doubling(1, 2, 1, 3, 2);
    CHECK(virtual_realizability(m, xi2(0, 0)));
    CHECK_FALSE(virtual_realizability(m, xi2(1, 1)));
    CHECK(virtual_realizability(m, xi2(Rational(9, 10), Rational(9, 10))));
}

TEST_CASE("CSV lower bounds") {
    auto m = twisted_doubling(1, 2, 1, 3, 2);
    Rational s(99, 100);
    auto lb = csv_lower_bound(m, {xi2(s, s)}, false);
    CHECK(lb.value.coefficient == 8 * s * s);
    CHECK(lb.accepted == 1);
    CHECK(csv_lower_bound(m, {xi2(0, 0)}, false).value.coefficient == 0);
    // rejected samples do not count
    CHECK(csv_lower_bound(m, {xi2(1, 1)}, false).accepted == 0);
    // monotone in the sample set
    auto more = csv_lower_bound(m, {xi2(s, s), xi2(Rational(1, 2), Rational(1, 2))}, false);
    CHECK(more.value.coefficient >= lb.value.coefficient);

    // constant cyclic, same-sign k and b, constant y below |chi|/|k - 2/b|
    auto c = constant_cyclic(4, -2, 4, 1);
    Rational y(9, 10);  // |chi|/|k - 2/b| = 1
    auto cl = csv_lower_bound(c, {constant_xi(c, y)}, false);
    CHECK(cl.value.coefficient == Rational(4 * 4) * y * y * 2);
}

TEST_CASE("CSV lower bound never exceeds the SDD bound") {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 10) {
        auto m = gen::random_manifold(rng, gen::uniform(rng, 2, 4));
        if (!is_strictly_diagonally_dominant(m).strict) continue;
        ++checked;
        std::vector<XiVector> samples;
        for (int s = 0; s < 20; ++s) {
            std::map<std::string, Rational> x;
            for (const auto& [id, _] : m.vertices) x[id] = gen::rational(rng, 5, 4);
            samples.push_back(XiVector::from_exact(x));
        }
        CHECK(csv_lower_bound(m, samples).value.coefficient <= csv_sdd_bound(m).coefficient);
    }
}

TEST_CASE("SDD bound formulas") {
    for (long g = 1; g <= 3; ++g) {
        Rational chi2 = Rational((2 * g - 1) * (2 * g - 1));
        auto m = twisted_doubling(g, 4, 3, 5, 4);  // 16 - 15 = 1
        CHECK(csv_sdd_bound(m).coefficient == 4 * chi2 * (Rational(3, 3) + Rational(3, 3)));
        for (long mm = 2; mm <= 5; ++mm)
            CHECK(csv_sdd_bound(twisted_doubling(g, mm, 1, mm * mm - 1, mm)).coefficient == 8 * chi2 / Rational(mm - 1));
    }
    CHECK(csv_sdd_bound(constant_cyclic(3, -1, 10, 1)).coefficient == Rational(3 * 4, 8));
    CHECK_THROWS_AS(csv_sdd_bound(constant_cyclic(3, -1, 1, 1)), DomainError);
}

TEST_CASE("constant cyclic CSV closed form") {
    CHECK(csv_constant_cyclic(4, -2, 4, 1).coefficient == 32);
    CHECK(csv_constant_cyclic(4, -2, 4, 1).str() == "32/1 * pi^2");
    CHECK(csv_constant_cyclic(4, -2, 2, 1).infinite);
    CHECK(csv_constant_cyclic(4, -2, 2, 1).str() == "inf");
    CHECK(csv_constant_cyclic(3, -1, 10, 1).coefficient == Rational(12, 8));
    CHECK(csv_constant_cyclic(5, -1, 1, 3).coefficient == 60);
    CHECK(csv_constant_cyclic(5, -1, Rational(1, 2), 3).infinite);
}

TEST_CASE("growth witness") {
    auto w1 = csv_growth_witness(4, -2, 2, 1, 1);
    CHECK(w1.m == 1);
    CHECK(*w1.lambda_exact == 2);
    CHECK(w1.bound.coefficient == 16);
    auto w8 = csv_growth_witness(4, -2, 2, 1, 8);
    CHECK(w8.bound.value() / w1.bound.value() > 8);
    CHECK(w8.within_spacing);

    // lambda at m = 1 is exactly zero for k = 0, n = 4: skipped
    auto z = csv_growth_witness(4, -2, 0, 1, 1);
    CHECK(z.m != 1);
    CHECK(z.lambda_exact);
    CHECK_FALSE(z.lambda_exact->is_zero());

    double prev = 0;
    for (long d : {2, 4, 8, 16}) {
        auto w = csv_growth_witness(4, -2, 2, 1, d);
        CHECK(std::fabs(w.lambda) < w.spacing_limit);
        double per = w.bound.value() / static_cast<double>(d);
        CHECK(per > prev);
        prev = per;
    }
    CHECK_THROWS_AS(csv_growth_witness(4, -2, 3, 1, 2), DomainError);
}

TEST_CASE("central bundle volume") {
    auto r = central_bundle_volume(2, 1, 2);
    CHECK(r.e_base == 2);
    CHECK(r.vol.coefficient == 16);
    auto z = central_bundle_volume(3, 5, 0);
    CHECK(z.e_base == 0);
    CHECK(z.vol.coefficient == 0);
    CHECK(central_bundle_volume(2, 3, Rational(2, 3)).vol.coefficient == Rational(16, 3));
    CHECK_THROWS_AS(central_bundle_volume(2, 3, 1), DomainError);
    CHECK_THROWS_AS(central_bundle_volume(2, 3, Rational(1, 2)), DomainError);
}

TEST_CASE("fiber twist directions lie in the kernel") {
    // For Waldhausen data a, the vector with (E alpha)(v) = 0 is any kernel
    // vector; boundary values over it sum to zero at every vertex.
    auto m = twisted_doubling(1, 1, 1, 0, 1);
    auto w = canonical_waldhausen(m);
    auto e = build_euler_operator(m);
    for (const auto& kv : rational_kernel(e)) {
        std::map<std::string, Rational> alpha;
        for (std::size_t i = 0; i < e.size(); ++i) alpha[e.index[i]] = kv[i];
        auto bv = boundary_values(m, w, alpha);
        std::map<std::string, Rational> sums;
        for (const auto& [edge, val] : bv) sums[edge.first] += val;
        for (const auto& [v, s] : sums) CHECK(s.is_zero());
    }
}

TEST_CASE("CSV report labels") {
    auto r = csv_report(constant_cyclic(4, -2, 4, 1));
    CHECK(r.exact);
    CHECK(r.value.coefficient == 32);
    auto t = csv_report(twisted_doubling(1, 2, 1, 3, 2));
    CHECK_FALSE(t.exact);
    REQUIRE(t.upper);
    CHECK(t.upper->coefficient == 8);
    CHECK(t.lower.coefficient <= 8);
    CHECK(t.lower.coefficient > Rational(79, 10));
    CHECK(t.upper_source == "sdd");
    auto u = csv_report(twisted_doubling(1, 1, 1, 0, 1));
    CHECK_FALSE(u.upper);
}
