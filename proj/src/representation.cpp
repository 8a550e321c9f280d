#include "seifertvol/representation.hpp"

#include "seifertvol/commutator.hpp"
#include "seifertvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace seifertvol {

namespace {

constexpr double kPi = std::numbers::pi;

Rational integral_b(const FormattedGraphManifold& m, const std::string& v, const std::string& w) {
    auto b = m.edge_b(v, w);
    if (!b) throw DomainError("no edge {" + v + "," + w + "}");
    if (!b->is_integer()) throw DomainError("edge {" + v + "," + w + "} has non-integral b = " + b->str());
    return *b;
}

// Reverse the pairs and swap each: the inverse commutator product.
std::vector<LiftedPair> orientation_swapped(const std::vector<LiftedPair>& pairs) {
    std::vector<LiftedPair> out;
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) out.emplace_back(it->second, it->first);
    return out;
}

std::vector<LiftedPair> build_fuchsian(long h) {
    const long n = 4 * h;
    const double d = std::acosh(1.0 / std::tan(kPi / static_cast<double>(n)));
    const Matrix2 t{std::exp(d), 0.0, 0.0, std::exp(-d)};
    // Counterclockwise rotation by phi about i.
    auto rot = [](double phi) { return Matrix2::rotation(-phi / (2.0 * kPi)); };
    auto theta = [n](long j) { return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n); };
    auto side = [&](long j) { return rot(theta(j)) * t * rot(kPi - theta(j + 2)); };
    std::vector<LiftedPair> out;
    for (long i = 0; i < h; ++i) {
        out.emplace_back(LiftedMatrix::canonical(side(4 * i)), LiftedMatrix::canonical(side(4 * i + 1).inverse()));
    }
    return out;
}

}  // namespace

std::vector<std::string> waldhausen_violations(const FormattedGraphManifold& m, const WaldhausenData& w) {
    std::vector<std::string> out;
    for (const auto& [v, data] : m.vertices) {
        Rational sum(0);
        bool complete = true;
        for (const auto& [nb, b] : m.neighbors(v)) {
            auto it = w.a.find({v, nb});
            if (it == w.a.end()) {
                out.push_back("missing a_{" + v + "," + nb + "}");
                complete = false;
                continue;
            }
            sum += Rational(it->second) / b;
        }
        if (complete && sum != data.k) out.push_back("at " + v + ": sum a/b = " + sum.str() + " but k = " + data.k.str());
    }
    for (const auto& [e, _] : w.a)
        if (!m.edge_b(e.first, e.second) || e.first == e.second) out.push_back("a_{" + e.first + "," + e.second + "} is not on an edge");
    return out;
}

WaldhausenData canonical_waldhausen(const FormattedGraphManifold& m) {
    ensure_valid(m);
    WaldhausenData w;
    for (const auto& [v, data] : m.vertices) {
        auto nbs = m.neighbors(v);
        if (nbs.empty()) {
            if (!data.k.is_zero()) throw DomainError("isolated vertex " + v + " needs k = 0");
            continue;
        }
        mpz_class l = 1;
        for (const auto& [nb, b] : nbs) {
            if (!b.is_integer()) throw DomainError("edge {" + v + "," + nb + "} has non-integral b");
            l = lcm(l, abs(b).numerator());
        }
        Rational target = data.k * Rational(mpz_class(l));
        if (!target.is_integer()) throw DomainError("no integral Waldhausen data at " + v + ": k*lcm(b) is not an integer");
        // sum a_j c_j = K, c_j = L / b_j; extended gcd accumulated left to right.
        std::vector<mpz_class> c, x;
        for (const auto& [nb, b] : nbs) c.push_back(mpz_class(l / b.numerator()));
        mpz_class g = c[0];
        x.push_back(1);
        for (std::size_t j = 1; j < c.size(); ++j) {
            mpz_class gg, s, t;
            mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), c[j].get_mpz_t());
            for (auto& xi : x) xi *= s;
            x.push_back(t);
            g = gg;
        }
        if (g < 0) {
            g = -g;
            for (auto& xi : x) xi = -xi;
        }
        mpz_class big_k = target.numerator();
        if (big_k % g != 0) throw DomainError("no integral Waldhausen data at " + v);
        mpz_class factor = big_k / g;
        for (std::size_t j = 0; j < nbs.size(); ++j) {
            mpz_class a = x[j] * factor;
            if (!a.fits_slong_p()) throw DomainError("Waldhausen integer overflow at " + v);
            w.a[{v, nbs[j].first}] = a.get_si();
        }
    }
    return w;
}

std::map<std::string, long> integral_xi(const FormattedGraphManifold& m, const XiVector& xi) {
    if (!xi.exact) throw DomainError("xi must be exact integers");
    std::map<std::string, long> out;
    RationalVector v = xi.exact_vector(m);
    auto ids = m.vertex_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!v[i].is_integer()) throw DomainError("xi(" + ids[i] + ") = " + v[i].str() + " is not an integer");
        out[ids[i]] = v[i].to_long();
    }
    return out;
}

std::map<DirectedEdge, Rational> boundary_values(const FormattedGraphManifold& m, const WaldhausenData& w,
                                                 const std::map<std::string, Rational>& xi) {
    ensure_valid(m);
    auto bad = waldhausen_violations(m, w);
    if (!bad.empty()) throw DomainError("Waldhausen consistency failure: " + bad.front());
    std::map<DirectedEdge, Rational> out;
    for (const auto& [v, _] : m.vertices)
        for (const auto& [nb, b] : m.neighbors(v)) out[{v, nb}] = (xi.at(nb) - Rational(w.a.at({v, nb})) * xi.at(v)) / b;
    return out;
}

std::map<DirectedEdge, long> boundary_targets(const FormattedGraphManifold& m, const WaldhausenData& w,
                                              const std::map<std::string, long>& xi) {
    std::map<std::string, Rational> q;
    for (const auto& [v, x] : xi) q[v] = Rational(x);
    for (const auto& [v, _] : m.vertices)
        if (!q.count(v)) throw DomainError("xi has no value at " + v);
    for (const auto& e : m.edges) integral_b(m, e.u, e.v);
    auto values = boundary_values(m, w, q);
    std::map<DirectedEdge, long> out;
    for (const auto& [e, t] : values) {
        if (!t.is_integer()) {
            throw DomainError("divisibility failure: b_{" + e.first + "," + e.second + "} does not divide xi(" + e.second +
                              ") - a xi(" + e.first + ")");
        }
        out[e] = t.to_long();
    }
    EulerOperator op = build_euler_operator(m);
    RationalVector xv;
    for (const auto& id : op.index) xv.push_back(q.at(id));
    RationalVector ex = op.entries * xv;
    for (std::size_t i = 0; i < op.size(); ++i) {
        Rational sum(0);
        for (const auto& [nb, _] : m.neighbors(op.index[i])) sum += Rational(out.at({op.index[i], nb}));
        if (sum != -ex[i]) throw DomainError("boundary target identity fails at " + op.index[i]);
    }
    return out;
}

const std::vector<LiftedPair>& fuchsian_generators(long h) {
    if (h < 2) throw DomainError("Fuchsian block needs genus >= 2");
    static std::mutex mu;
    static std::map<long, std::vector<LiftedPair>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(h);
    if (it == cache.end()) it = cache.emplace(h, build_fuchsian(h)).first;
    return it->second;
}

LiftedMatrix product_of_commutators(const std::vector<LiftedPair>& pairs) {
    LiftedMatrix p = LiftedMatrix::identity();
    for (const auto& [x, y] : pairs) p = compose(p, commutator(x, y));
    return p;
}

std::vector<LiftedPair> realize_central_product(long g, long n) {
    if (g < 1) throw DomainError("genus must be positive");
    if (std::labs(n) > 2 * g - 2) {
        throw DomainError("|N| = " + std::to_string(std::labs(n)) + " exceeds 2g - 2 = " + std::to_string(2 * g - 2));
    }
    std::vector<LiftedPair> pairs;
    const long an = std::labs(n);
    if (an > 0) {
        long h;
        if (an % 2 == 0) {
            h = an / 2 + 1;
            pairs = fuchsian_generators(h);
        } else {
            // Replace the last handle by a factorization of its own commutator:
            // that lift differs by one deck step, shifting 2 - 2h to 3 - 2h.
            h = (an + 3) / 2;
            pairs = fuchsian_generators(h);
            Matrix2 c = commutator(pairs.back().first.m, pairs.back().second.m);
            FactorPair f = factor(c);
            pairs.back() = {LiftedMatrix::canonical(f.a), LiftedMatrix::canonical(f.b)};
        }
        LiftedMatrix p = product_of_commutators(pairs);
        if (std::lround(p.t) != -an) pairs = orientation_swapped(pairs);
        if (n > 0) pairs = orientation_swapped(pairs);
        pairs.resize(static_cast<std::size_t>(g), {LiftedMatrix::identity(), LiftedMatrix::identity()});
    } else {
        pairs.assign(static_cast<std::size_t>(g), {LiftedMatrix::identity(), LiftedMatrix::identity()});
    }
    LiftedMatrix p = product_of_commutators(pairs);
    const double mres = psl_distance(p.m, Matrix2::identity());
    const double tres = std::fabs(p.t - static_cast<double>(n));
    const double wres = std::fabs(omega_tilde(p) / kPi - static_cast<double>(n));
    if (mres > 1e-7 || tres > 1e-6 || wres > 1e-6) {
        std::ostringstream os;
        os << "central product construction failed for (g=" << g << ", N=" << n << "): matrix residual " << mres
           << ", lift residual " << tres << ", wind residual " << wres;
        throw DomainError(os.str());
    }
    return pairs;
}

RepresentationSketch build_representation(const FormattedGraphManifold& m, const WaldhausenData& w, const XiVector& xi) {
    ensure_valid(m);
    RepresentationSketch s;
    s.manifold = m;
    s.waldhausen = w;
    s.xi = integral_xi(m, xi);
    s.targets = boundary_targets(m, w, s.xi);
    for (const auto& [v, data] : m.vertices) {
        VertexPresentation p;
        p.vertex = v;
        p.boundary_count = static_cast<long>(m.valence(v));
        Rational twice_g = Rational(2 - p.boundary_count) - data.chi;
        if (!twice_g.is_integer() || twice_g.to_long() % 2 != 0 || twice_g.to_long() < 2) {
            throw DomainError("vertex " + v + ": chi = " + data.chi.str() + " with " + std::to_string(p.boundary_count) +
                              " boundary tori is not a product piece of positive genus");
        }
        p.genus = twice_g.to_long() / 2;
        long total = 0;
        for (const auto& [nb, _] : m.neighbors(v)) {
            long t = s.targets.at({v, nb});
            p.boundary.emplace_back(nb, t);
            total += t;
        }
        if (std::labs(total) > 2 * p.genus - 2) {
            throw DomainError("vertex " + v + ": |sum of boundary targets| = " + std::to_string(std::labs(total)) +
                              " exceeds 2g - 2 = " + std::to_string(2 * p.genus - 2));
        }
        p.pairs = realize_central_product(p.genus, total);
        p.fiber = s.xi.at(v);
        s.vertices[v] = std::move(p);
    }
    return s;
}

VerificationReport verify_representation(const RepresentationSketch& sketch) {
    VerificationReport r;
    const FormattedGraphManifold& m = sketch.manifold;
    std::map<std::string, double> rec;
    for (const auto& [v, p] : sketch.vertices) {
        long total = 0;
        for (const auto& [nb, t] : p.boundary) total += t;
        double res;
        try {
            LiftedMatrix prod = product_of_commutators(p.pairs);
            res = std::max(psl_distance(prod.m, Matrix2::identity()), std::fabs(prod.t - static_cast<double>(total)));
        } catch (const std::exception& e) {
            res = HUGE_VAL;
            r.failures.push_back("relation at " + v + ": " + e.what());
        }
        r.relation_residual[v] = res;
        if (!(res <= 1e-6)) {
            r.relations_ok = false;
            r.failures.push_back("relation residual at " + v + " is " + std::to_string(res));
        }
        double wv;
        try {
            wv = wind(Motion::make(LiftedMatrix::identity(), static_cast<double>(p.fiber)));
        } catch (const std::exception& e) {
            wv = HUGE_VAL;
        }
        r.recomputed_xi[v] = wv;
        rec[v] = wv;
        auto it = sketch.xi.find(v);
        if (it == sketch.xi.end() || !(std::fabs(wv - static_cast<double>(it->second)) <= 1e-6)) {
            r.xi_ok = false;
            r.failures.push_back("recomputed xi at " + v + " disagrees");
        }
        for (const auto& [nb, t] : p.boundary) {
            auto a = sketch.waldhausen.a.find({v, nb});
            auto b = m.edge_b(v, nb);
            bool ok = a != sketch.waldhausen.a.end() && b && sketch.xi.count(nb) && sketch.targets.count({v, nb}) &&
                      sketch.targets.at({v, nb}) == t &&
                      Rational(a->second) * Rational(p.fiber) + *b * Rational(t) == Rational(sketch.xi.at(nb));
            if (!ok) {
                r.torus_ok = false;
                r.failures.push_back("torus consistency fails on (" + v + "," + nb + ")");
            }
        }
    }
    try {
        r.recomputed_volume = volume_from_xi(m, XiVector::from_real(rec)).real_coefficient;
        std::map<std::string, Rational> exact;
        for (const auto& [v, x] : sketch.xi) exact[v] = Rational(x);
        r.exact_volume = volume_from_xi(m, XiVector::from_exact(exact)).coefficient;
        const double ex = r.exact_volume.to_double();
        r.volume_relative_error = std::fabs(r.recomputed_volume - ex) / std::max(1.0, std::fabs(ex));
        if (!(r.volume_relative_error <= 1e-6)) {
            r.volume_ok = false;
            r.failures.push_back("recomputed volume disagrees with the exact formula");
        }
    } catch (const std::exception& e) {
        r.volume_ok = false;
        r.failures.push_back(std::string("volume cross-check: ") + e.what());
    }
    return r;
}

}  // namespace seifertvol
