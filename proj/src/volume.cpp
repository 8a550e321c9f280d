#include "seifertvol/volume.hpp"

#include "seifertvol/box_qp.hpp"
#include "seifertvol/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace seifertvol {

namespace {

void check_vertex_set(const FormattedGraphManifold& m, std::size_t size, const std::map<std::string, double>& approx) {
    if (size != m.vertices.size()) throw DomainError("xi is defined on " + std::to_string(size) + " vertices, manifold has " + std::to_string(m.vertices.size()));
    for (const auto& [id, _] : m.vertices)
        if (!approx.count(id)) throw DomainError("xi has no value at vertex '" + id + "'");
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Auto-sample cutoff: the exact SV search is 3^n.
constexpr std::size_t kAutoSampleMaxVertices = 10;

}  // namespace

XiVector XiVector::from_exact(std::map<std::string, Rational> v) {
    XiVector x;
    x.exact = true;
    for (const auto& [id, q] : v) x.approx[id] = q.to_double();
    x.values = std::move(v);
    return x;
}

XiVector XiVector::from_real(std::map<std::string, double> v) {
    XiVector x;
    x.exact = false;
    x.approx = std::move(v);
    return x;
}

RationalVector XiVector::exact_vector(const FormattedGraphManifold& m) const {
    if (!exact) throw DomainError("xi is not exact");
    check_vertex_set(m, values.size(), approx);
    RationalVector out;
    for (const auto& id : m.vertex_ids()) out.push_back(values.at(id));
    return out;
}

RealVector XiVector::real_vector(const FormattedGraphManifold& m) const {
    check_vertex_set(m, approx.size(), approx);
    RealVector out;
    for (const auto& id : m.vertex_ids()) out.push_back(approx.at(id));
    return out;
}

XiVector xi_from_vector(const FormattedGraphManifold& m, const RationalVector& v) {
    auto ids = m.vertex_ids();
    if (ids.size() != v.size()) throw DomainError("xi vector length mismatch");
    std::map<std::string, Rational> out;
    for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]] = v[i];
    return XiVector::from_exact(std::move(out));
}

TauMap uniform_tau(const FormattedGraphManifold& m, TauValue value) {
    TauMap t;
    for (const auto& e : m.edges) t[{e.u, e.v}] = value;
    return t;
}

TauValue tau_at(const TauMap& tau, const std::string& u, const std::string& v) {
    auto it = tau.find(u <= v ? std::make_pair(u, v) : std::make_pair(v, u));
    if (it == tau.end()) throw DomainError("tau is not defined on edge {" + u + "," + v + "}");
    return it->second;
}

PiSqValue PiSqValue::of(const Rational& q) {
    PiSqValue p;
    p.exact = true;
    p.coefficient = q;
    p.real_coefficient = q.to_double();
    return p;
}

PiSqValue PiSqValue::of_real(double q) {
    PiSqValue p;
    p.exact = false;
    p.real_coefficient = q;
    return p;
}

PiSqValue PiSqValue::infinity() {
    PiSqValue p;
    p.exact = true;
    p.infinite = true;
    p.real_coefficient = HUGE_VAL;
    return p;
}

double PiSqValue::value() const { return real_coefficient * std::numbers::pi * std::numbers::pi; }

std::string PiSqValue::str() const {
    if (infinite) return "inf";
    if (exact) return coefficient.str() + " * pi^2";
    return format_double(real_coefficient) + " * pi^2";
}

PiSqValue volume_from_xi(const FormattedGraphManifold& m, const XiVector& xi) {
    EulerOperator e = build_euler_operator(m);
    if (xi.exact) {
        RationalVector x = xi.exact_vector(m);
        return PiSqValue::of(Rational(4) * quadratic_form(e.entries, x));
    }
    RealVector x = xi.real_vector(m);
    return PiSqValue::of_real(4.0 * quadratic_form(e.to_real(), x));
}

std::map<std::string, Rational> mw_bounds(const FormattedGraphManifold& m, const TauMap& tau) {
    ensure_valid(m);
    std::map<std::string, Rational> out;
    for (const auto& [id, d] : m.vertices) {
        Rational b = -d.chi;
        for (const auto& [w, _] : m.neighbors(id)) {
            TauValue t = tau_at(tau, id, w);
            if (!t) continue;
            if (*t < 1) throw DomainError("tau must be a positive integer or infinity");
            b -= Rational(1, *t);
        }
        out[id] = max(Rational(0), b);
    }
    return out;
}

std::vector<MwVertexCheck> check_mw(const FormattedGraphManifold& m, const XiVector& xi, const TauMap& tau, double tol) {
    EulerOperator e = build_euler_operator(m);
    auto bounds = mw_bounds(m, tau);
    std::vector<MwVertexCheck> out;
    if (xi.exact) {
        RationalVector ex = e.entries * xi.exact_vector(m);
        for (std::size_t i = 0; i < e.size(); ++i) {
            MwVertexCheck c;
            c.vertex = e.index[i];
            c.exact_lhs = abs(ex[i]);
            c.exact_bound = bounds.at(c.vertex);
            c.pass = *c.exact_lhs <= c.exact_bound;
            c.lhs = c.exact_lhs->to_double();
            c.bound = c.exact_bound.to_double();
            c.residual = (*c.exact_lhs - c.exact_bound).to_double();
            out.push_back(c);
        }
        return out;
    }
    RealVector ex = e.to_real() * xi.real_vector(m);
    for (std::size_t i = 0; i < e.size(); ++i) {
        MwVertexCheck c;
        c.vertex = e.index[i];
        c.exact_bound = bounds.at(c.vertex);
        c.lhs = std::fabs(ex[i]);
        c.bound = c.exact_bound.to_double();
        c.residual = c.lhs - c.bound;
        c.pass = c.lhs <= c.bound + tol;
        out.push_back(c);
    }
    return out;
}

SvBound sv_upper_bound(const FormattedGraphManifold& m, const std::optional<TauMap>& tau) {
    EulerOperator e = build_euler_operator(m);
    auto bounds = mw_bounds(m, tau ? *tau : uniform_tau(m, std::nullopt));
    const std::size_t n = e.size();

    // The form only sees y = E xi, which lives in range(E) = ker(E)^perp.
    auto ker = rational_kernel(e);
    BoxQP<Rational> q;
    q.a = symmetric_pseudo_inverse(e.entries);
    for (const auto& id : e.index) q.c.push_back(bounds.at(id));
    q.equality = RationalMatrix(ker.size(), n);
    for (std::size_t r = 0; r < ker.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) q.equality(r, j) = ker[r][j];

    auto plus = maximize_box_qp(q);
    BoxQP<Rational> qn = q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qn.a(i, j) = -q.a(i, j);
    auto minus = maximize_box_qp(qn);

    SvBound r;
    const bool use_minus = minus.value > plus.value;
    const auto& best = use_minus ? minus : plus;
    r.branch = use_minus ? -1 : 1;
    r.y = best.maximizer;
    r.xi = q.a * r.y;
    r.bound = PiSqValue::of(Rational(4) * best.value);
    return r;
}

bool virtual_realizability(const FormattedGraphManifold& m, const XiVector& xi) {
    EulerOperator e = build_euler_operator(m);
    RationalVector ex = e.entries * xi.exact_vector(m);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!(abs(ex[i]) < -m.vertices.at(e.index[i]).chi)) return false;
    return true;
}

CsvLowerBound csv_lower_bound(const FormattedGraphManifold& m, const std::vector<XiVector>& samples, bool auto_samples) {
    EulerOperator e = build_euler_operator(m);
    std::vector<XiVector> all = samples;
    if (auto_samples) {
        std::map<std::string, Rational> zero;
        for (const auto& id : e.index) zero[id] = Rational(0);
        all.push_back(XiVector::from_exact(zero));
        if (e.size() <= kAutoSampleMaxVertices) {
            SvBound sv = sv_upper_bound(m);
            for (long p = 10; p <= 10000; p *= 10) {
                Rational scale = Rational(1) - Rational(1, p);
                RationalVector x = sv.xi;
                for (auto& v : x) v *= scale;
                all.push_back(xi_from_vector(m, x));
            }
        }
    }
    CsvLowerBound r;
    r.value = PiSqValue::of(Rational(0));
    for (const auto& xi : all) {
        ++r.tried;
        if (!xi.exact) throw DomainError("csv_lower_bound samples must be exact rational");
        if (!virtual_realizability(m, xi)) continue;
        ++r.accepted;
        Rational v = abs(Rational(4) * quadratic_form(e.entries, xi.exact_vector(m)));
        if (!r.witness || v > r.value.coefficient) {
            r.value = PiSqValue::of(v);
            r.witness = xi;
        }
    }
    return r;
}

PiSqValue csv_sdd_bound(const FormattedGraphManifold& m) {
    DominanceReport dom = is_strictly_diagonally_dominant(m);
    if (!dom.strict) throw DomainError("manifold is not strictly diagonally dominant");
    Rational sum(0);
    auto ids = m.vertex_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const Rational& chi = m.vertices.at(ids[i]).chi;
        sum += Rational(4) * chi * chi / dom.slack[i];
    }
    return PiSqValue::of(sum);
}

PiSqValue csv_constant_cyclic(long n, const Rational& chi, const Rational& k, long b) {
    if (n < 3) throw DomainError("constant cyclic formula needs n >= 3");
    if (chi.sign() >= 0) throw DomainError("constant cyclic formula needs chi < 0");
    if (b == 0) throw DomainError("constant cyclic formula needs b != 0");
    Rational gap = abs(k) - abs(Rational(2, b));
    if (gap.sign() <= 0) return PiSqValue::infinity();
    return PiSqValue::of(Rational(4 * n) * chi * chi / gap);
}

GrowthWitness csv_growth_witness(long n, const Rational& chi, const Rational& k, long b, long d) {
    if (b == 0) throw DomainError("growth witness needs b != 0");
    if (d < 1) throw DomainError("growth witness needs d >= 1");
    if (abs(k) > abs(Rational(2, b))) throw DomainError("growth witness applies only when |k| <= |2/b|");
    auto spectrum = circulant_spectrum(n, k, Rational(b), d);
    const CirculantEigenvalue* best = nullptr;
    // Descending m with strict improvement: ties favour the larger index.
    for (auto it = spectrum.rbegin(); it != spectrum.rend(); ++it) {
        if (it->exact && it->exact->is_zero()) continue;
        if (!best || std::fabs(it->value) < std::fabs(best->value) - 1e-12) best = &*it;
    }
    if (!best) throw DomainError("no nonzero eigenvalue in the circulant spectrum");
    GrowthWitness w;
    w.m = best->m;
    w.lambda = best->value;
    w.lambda_exact = best->exact;
    const long nd = n * d;
    if (best->exact) {
        w.bound = PiSqValue::of(Rational(2 * nd) * chi * chi / abs(*best->exact));
    } else {
        w.bound = PiSqValue::of_real(2.0 * static_cast<double>(nd) * chi.to_double() * chi.to_double() / std::fabs(best->value));
    }
    w.spacing_limit = 8.0 * std::numbers::pi / (std::fabs(static_cast<double>(b)) * static_cast<double>(n)) / static_cast<double>(d);
    w.within_spacing = std::fabs(best->value) < w.spacing_limit;
    return w;
}

CentralBundleVolume central_bundle_volume(long g, long e, const Rational& phi_fib) {
    if (g < 1) throw DomainError("central bundle needs base genus >= 1");
    if (e == 0) throw DomainError("central bundle needs nonzero Euler number");
    Rational eb = Rational(e) * phi_fib;
    if (!eb.is_integer() || abs(eb) > Rational(2 * g - 2)) {
        throw DomainError("fiber winding " + phi_fib.str() + " is not one of j/e with |j| <= 2g-2");
    }
    return {eb, PiSqValue::of(Rational(4) * phi_fib * phi_fib * Rational(e))};
}

std::optional<CyclicParameters> detect_constant_cyclic(const FormattedGraphManifold& m) {
    if (has_errors(validate(m))) return std::nullopt;
    const std::size_t n = m.vertices.size();
    if (n < 3 || m.edges.size() != n) return std::nullopt;
    const VertexData& first = m.vertices.begin()->second;
    for (const auto& [id, d] : m.vertices) {
        if (d.chi != first.chi || d.k != first.k || m.valence(id) != 2) return std::nullopt;
    }
    const Rational& b = m.edges.front().b;
    for (const auto& e : m.edges)
        if (e.b != b) return std::nullopt;
    if (!b.is_integer() || first.chi.sign() >= 0) return std::nullopt;
    // Connected 2-regular graph: a single cycle.
    return CyclicParameters{static_cast<long>(n), first.chi, first.k, b.to_long()};
}

CsvReport csv_report(const FormattedGraphManifold& m) {
    CsvReport r;
    if (auto cyc = detect_constant_cyclic(m)) {
        r.exact = true;
        r.value = csv_constant_cyclic(cyc->n, cyc->chi, cyc->k, cyc->b);
        r.lower = r.value;
        r.upper = r.value;
        r.upper_source = "constant-cyclic";
        return r;
    }
    r.lower = csv_lower_bound(m, {}).value;
    if (is_strictly_diagonally_dominant(m).strict) {
        r.upper = csv_sdd_bound(m);
        r.upper_source = "sdd";
    }
    return r;
}

}  // namespace seifertvol
