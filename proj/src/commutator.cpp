#include "seifertvol/commutator.hpp"

#include "seifertvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace seifertvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRootGrid = 64;
constexpr int kMaxBisection = 200;

Matrix2 conj(const Matrix2& s, const Matrix2& x) { return s * x * s.inverse(); }

Matrix2 rotated(const Matrix2& m, double r) {
    Matrix2 k = Matrix2::rotation(r);
    return k.inverse() * m * k;
}

void check_residual(const FactorPair& f, const char* family) {
    if (!(f.residual <= 1e-8)) {
        throw DomainError(std::string(family) + " factorization residual " + std::to_string(f.residual) + " exceeds tolerance");
    }
}

}  // namespace

Matrix2 elliptic_canonical(double lambda, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, lambda * s, -s / lambda, c};
}

Matrix2 hyperbolic_canonical(double lambda, double tau) {
    const double c = std::cosh(tau), s = std::sinh(tau);
    return {c, lambda * s, s / lambda, c};
}

Matrix2 parabolic_canonical(double u, bool inverted) { return {1.0, inverted ? -u : u, 0.0, 1.0}; }

Matrix2 CanonicalForm::canonical() const {
    switch (kind) {
        case ConjKind::elliptic: return elliptic_canonical(lambda, theta);
        case ConjKind::hyperbolic: return hyperbolic_canonical(lambda, tau);
        default: return parabolic_canonical(u, inverted);
    }
}

CanonicalForm canonical_form(const Matrix2& m0) {
    const ConjKind kind = classify(m0);
    if (kind == ConjKind::central) throw DomainError("canonical form of a central element");
    Matrix2 m = m0;
    const double s0 = 0.5 * (m0.b - m0.c);
    // Elliptic: normalize the rotation part positive. Otherwise: trace positive.
    if (kind == ConjKind::elliptic ? s0 < 0 : m0.trace() < 0) m = -m0;
    const double s = 0.5 * (m.b - m.c);
    const double p = 0.5 * (m.a - m.d), q = 0.5 * (m.b + m.c);
    const double scale = std::max(1.0, m.norm_inf());
    // Parabolic needs q with the sign of s (puts the fixed point at infinity).
    const double want = (kind == ConjKind::parabolic_positive || kind == ConjKind::parabolic_negative) ? (s < 0 ? -1.0 : 1.0) : 1.0;

    CanonicalForm cf;
    cf.kind = kind;
    if (std::hypot(p, q) <= 1e-14 * scale) {
        cf.r = 0.0;
    } else {
        auto g = [&](double r) {
            Matrix2 n = rotated(m, r);
            return n.a - n.d;
        };
        std::vector<double> roots;
        double prev = g(0.0);
        for (int i = 0; i < kRootGrid; ++i) {
            double r0 = static_cast<double>(i) / kRootGrid, r1 = static_cast<double>(i + 1) / kRootGrid;
            double g1 = g(r1);
            if (prev == 0.0) {
                roots.push_back(r0);
            } else if ((prev < 0) != (g1 < 0) && g1 != 0.0) {
                double lo = r0, hi = r1, glo = prev;
                int it = 0;
                for (; it < kMaxBisection; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
                    double gm = g(mid);
                    if (gm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((gm < 0) == (glo < 0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                if (it >= kMaxBisection && hi - lo > 1e-12) throw DomainError("canonical form: bisection did not converge");
                roots.push_back(0.5 * (lo + hi));
            }
            prev = g1;
        }
        std::optional<double> best;
        double best_q = 0.0;
        for (double r : roots) {
            Matrix2 n = rotated(m, r);
            double qq = want * 0.5 * (n.b + n.c);
            if (!best || qq > best_q) {
                best = r;
                best_q = qq;
            }
        }
        if (!best) throw DomainError("canonical form: no conjugating rotation found");
        cf.r = *best;
    }
    cf.conjugator = Matrix2::rotation(cf.r);
    const Matrix2 n = rotated(m, cf.r);
    switch (kind) {
        case ConjKind::elliptic: {
            cf.lambda = std::sqrt(-n.b / n.c);
            cf.theta = std::atan2(std::sqrt(-n.b * n.c), 0.5 * (n.a + n.d));
            break;
        }
        case ConjKind::hyperbolic: {
            cf.lambda = std::sqrt(n.b / n.c);
            cf.tau = std::asinh(std::sqrt(n.b * n.c));
            break;
        }
        default: {
            cf.u = std::fabs(n.b);
            cf.inverted = n.b < 0;
            break;
        }
    }
    cf.residual = psl_distance(conj(cf.conjugator, cf.canonical()), m0);
    if (!(cf.residual <= 1e-9 * scale)) {
        throw DomainError("canonical form residual " + std::to_string(cf.residual) + " exceeds tolerance");
    }
    return cf;
}

FactorPair factor_elliptic(double lambda, double theta) {
    if (!(lambda > 0)) throw DomainError("elliptic factorization needs lambda > 0");
    if (!(theta > 0) || theta > kPi - 1e-6) throw DomainError("elliptic factorization needs theta in (0, pi - 1e-6]");
    const double l2 = lambda + 1.0 / lambda;
    const double x = std::sqrt(2.0 * std::tan(theta / 2.0) / l2);
    const double y = std::sqrt(l2 * std::sin(theta) / 4.0);
    const double xy = std::sin(theta / 2.0);
    const double r1 = std::sqrt(1.0 + y * y), r2 = std::sqrt(1.0 + x * x);
    const double pp = r1 - y * r2, qq = r1 + y * r2;
    const double mu = lambda * std::sqrt(pp / qq);
    FactorPair f;
    f.a = {qq, mu * xy, -xy / mu, pp};
    f.b = {r2, mu * x, x / mu, r2};
    f.residual = (commutator(f.a, f.b) - elliptic_canonical(lambda, theta)).norm_inf();
    return f;
}

FactorPair factor_hyperbolic(double lambda, double tau) {
    if (!(lambda > 0)) throw DomainError("hyperbolic factorization needs lambda > 0");
    if (!(tau > 0)) throw DomainError("hyperbolic factorization needs tau > 0");
    const double l2 = lambda + 1.0 / lambda;
    const double x = std::sqrt(2.0 * std::tanh(tau / 2.0) / l2);
    const double y = std::sqrt(l2 * std::sinh(tau) / 4.0);
    const double xy = std::sinh(tau / 2.0);
    const double r1 = std::sqrt(1.0 + y * y), r2 = std::sqrt(1.0 - x * x);
    const double pp = r1 - y * r2, qq = r1 + y * r2;
    const double mu = lambda * std::sqrt(pp / qq);
    FactorPair f;
    f.a = {qq, mu * xy, xy / mu, pp};
    f.b = {r2, mu * x, -x / mu, r2};
    f.residual = (commutator(f.a, f.b) - hyperbolic_canonical(lambda, tau)).norm_inf();
    return f;
}

FactorPair factor_parabolic(double u, bool inverted) {
    if (!(u > 0)) throw DomainError("parabolic factorization needs u > 0");
    const double su = std::sqrt(u);
    const double w = std::sqrt(1.0 + su);
    Matrix2 a{1.0, su + u, 0.0, 1.0};
    Matrix2 b{1.0 / w, 0.0, 0.0, w};
    FactorPair f;
    // C(u)^-1 = [B, A].
    if (inverted) {
        f.a = b;
        f.b = a;
    } else {
        f.a = a;
        f.b = b;
    }
    f.residual = (commutator(f.a, f.b) - parabolic_canonical(u, inverted)).norm_inf();
    return f;
}

FactorPair factor(const Matrix2& m) {
    CanonicalForm cf = canonical_form(m);
    FactorPair base;
    switch (cf.kind) {
        case ConjKind::elliptic: base = factor_elliptic(cf.lambda, cf.theta); break;
        case ConjKind::hyperbolic: base = factor_hyperbolic(cf.lambda, cf.tau); break;
        default: base = factor_parabolic(cf.u, cf.inverted); break;
    }
    FactorPair f;
    f.a = conj(cf.conjugator, base.a);
    f.b = conj(cf.conjugator, base.b);
    f.residual = psl_distance(commutator(f.a, f.b), m);
    check_residual(f, to_string(cf.kind).c_str());
    return f;
}

LiftedFactorPair factor_lifted(const LiftedMatrix& gamma) {
    const double dist = psl_distance(gamma.m, Matrix2::identity());
    if (dist <= 1e-10) throw DomainError("factor_lifted: central element is not a commutator of near-identity lifts");
    if (dist > kNearIdentityRadius) throw DomainError("factor_lifted: matrix is outside the trusted neighbourhood of +-I");
    const double w = omega_tilde(gamma) / kPi;
    const long n = std::lround(w);
    if (std::fabs(w - static_cast<double>(n)) > kNearIdentityRadius) {
        throw DomainError("factor_lifted: winding is not within 0.1 of an integer");
    }
    // The elliptic normal form only covers one rotation direction; near +-I
    // the other direction lands at theta ~ pi with huge factors. Factor the
    // inverse instead and swap, since [b, a] = [a, b]^-1.
    FactorPair f;
    const CanonicalForm cf = canonical_form(gamma.m);
    if (cf.kind == ConjKind::elliptic && cf.theta > kPi / 2) {
        FactorPair g = factor(gamma.m.inverse());
        f.a = g.b;
        f.b = g.a;
    } else {
        f = factor(gamma.m);
    }
    LiftedFactorPair out;
    out.a = LiftedMatrix::near_identity(f.a);
    out.b = LiftedMatrix::near_identity(f.b);
    out.deck_shift = n;
    LiftedMatrix c = compose(commutator(out.a, out.b), LiftedMatrix::rotation(static_cast<double>(n)));
    out.residual = lifted_distance(c, gamma);
    if (!(out.residual <= 1e-7)) {
        throw DomainError("factor_lifted: lifted residual " + std::to_string(out.residual) + " exceeds tolerance");
    }
    return out;
}

}  // namespace seifertvol
