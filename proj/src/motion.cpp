#include "seifertvol/motion.hpp"

#include "seifertvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace seifertvol {

namespace {

constexpr double kPi = std::numbers::pi;

Tolerances g_tolerances;

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

// Distance on R/Z.
double circle_distance(double x, double y) {
    double d = frac(x - y);
    return std::min(d, 1.0 - d);
}

// Counterclockwise angle in [0, pi] from m e0 to m v(x), x in [0,1).
double swept_angle(const Matrix2& m, double x) {
    const double u0x = m.a, u0y = m.c;
    const double cx = std::cos(kPi * x), sx = std::sin(kPi * x);
    const double ux = m.a * cx + m.b * sx, uy = m.c * cx + m.d * sx;
    const double cross = u0x * uy - u0y * ux;
    const double dotp = u0x * ux + u0y * uy;
    double ang = std::atan2(cross, dotp);
    if (ang < 0) ang = dotp > 0 ? 0.0 : kPi;
    return ang;
}

constexpr int kDisplacementSamples = 4096;
constexpr int kRefineIterations = 100;

template <class F>
double refine_extremum(F f, double lo, double hi, bool maximize) {
    for (int it = 0; it < kRefineIterations && hi - lo > 1e-15; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        double f1 = f(m1), f2 = f(m2);
        if (maximize ? f1 < f2 : f1 > f2) lo = m1;
        else hi = m2;
    }
    return f(0.5 * (lo + hi));
}

}  // namespace

const Tolerances& tolerances() { return g_tolerances; }
void set_tolerances(const Tolerances& t) { g_tolerances = t; }

Matrix2 Matrix2::rotation(double r) {
    const double c = std::cos(kPi * r), s = std::sin(kPi * r);
    return {c, -s, s, c};
}

double Matrix2::norm_inf() const { return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)}); }

Matrix2 Matrix2::renormalized() const {
    const double dt = det();
    if (!(dt > 0)) throw DomainError("matrix determinant is not positive");
    const double s = 1.0 / std::sqrt(dt);
    return {a * s, b * s, c * s, d * s};
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Matrix2 operator+(const Matrix2& x, const Matrix2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }

double psl_distance(const Matrix2& x, const Matrix2& y) { return std::min((x - y).norm_inf(), (x + y).norm_inf()); }

Matrix2 commutator(const Matrix2& x, const Matrix2& y) { return x * y * x.inverse() * y.inverse(); }

double circle_map(const Matrix2& m, double x) {
    const double cx = std::cos(kPi * x), sx = std::sin(kPi * x);
    const double vx = m.a * cx + m.b * sx, vy = m.c * cx + m.d * sx;
    return frac(std::atan2(vy, vx) / kPi);
}

LiftedMatrix LiftedMatrix::make(const Matrix2& m, double t) {
    if (std::fabs(m.det() - 1.0) > 1e-9 * std::max(1.0, m.norm_inf() * m.norm_inf())) {
        throw DomainError("matrix does not have unit determinant (det = " + std::to_string(m.det()) + ")");
    }
    if (!std::isfinite(t)) throw DomainError("lift parameter is not finite");
    double c = circle_map(m, 0.0);
    if (circle_distance(c, t) > tolerances().structural) {
        std::ostringstream os;
        os.precision(12);
        os << "lift parameter t = " << t << " does not lie over the circle image " << c;
        throw DomainError(os.str());
    }
    return {m, t};
}

LiftedMatrix LiftedMatrix::canonical(const Matrix2& m) { return {m, circle_map(m, 0.0)}; }

LiftedMatrix LiftedMatrix::near_identity(const Matrix2& m) {
    double t = circle_map(m, 0.0);
    if (t > 0.5) t -= 1.0;
    return {m, t};
}

double lift_eval(const LiftedMatrix& g, double y) {
    const double fl = std::floor(y);
    double x = y - fl;
    if (x >= 1.0) x = 0.0;
    return g.t + swept_angle(g.m, x) / kPi + fl;
}

LiftedMatrix compose(const LiftedMatrix& g1, const LiftedMatrix& g2) {
    Matrix2 p = g1.m * g2.m;
    const double scale = std::max(1.0, g1.m.norm_inf() * g2.m.norm_inf());
    if (std::fabs(p.det() - 1.0) > 1e-6 * scale * scale) {
        throw DomainError("determinant drift in composition (det = " + std::to_string(p.det()) + ")");
    }
    return {p.renormalized(), lift_eval(g1, g2.t)};
}

LiftedMatrix invert(const LiftedMatrix& g) {
    Matrix2 mi = g.m.inverse();
    const double c = circle_map(mi, 0.0);
    return {mi, c - std::round(lift_eval(g, c))};
}

LiftedMatrix commutator(const LiftedMatrix& x, const LiftedMatrix& y) {
    return compose(compose(x, y), compose(invert(x), invert(y)));
}

double lifted_distance(const LiftedMatrix& x, const LiftedMatrix& y) {
    return std::max(psl_distance(x.m, y.m), std::fabs(x.t - y.t));
}

double omega_bar(const Matrix2& m) {
    const double tr = m.trace();
    if (std::fabs(tr) >= 2.0) return 0.0;
    const double sgn = (m.c - m.b) < 0 ? -1.0 : 1.0;
    double v = std::fmod(sgn * std::acos(tr / 2.0), kPi);
    if (v < 0) v += kPi;
    if (v >= kPi) v -= kPi;
    return v;
}

DisplacementInterval displacement_interval(const LiftedMatrix& g) {
    auto f = [&](double x) { return lift_eval(g, x) - x; };
    const double h = 1.0 / kDisplacementSamples;
    int imin = 0, imax = 0;
    double fmin = f(0.0), fmax = fmin;
    for (int i = 1; i <= kDisplacementSamples; ++i) {
        double v = f(i * h);
        if (v < fmin) { fmin = v; imin = i; }
        if (v > fmax) { fmax = v; imax = i; }
    }
    // Displacement is 1-periodic, so brackets may run past [0,1].
    double lo = std::min(fmin, refine_extremum(f, (imin - 1) * h, (imin + 1) * h, false));
    double hi = std::max(fmax, refine_extremum(f, (imax - 1) * h, (imax + 1) * h, true));
    return {lo, hi};
}

long select_winding_integer(double theta_bar, double lo, double hi, double slack) {
    std::ostringstream diag;
    diag.precision(12);
    diag << " (theta_bar = " << theta_bar << ", displacement interval [" << lo << ", " << hi << "])";
    if (hi - lo >= 1.0) throw DomainError("displacement interval has width >= 1" + diag.str());
    const long first = static_cast<long>(std::ceil(lo - slack - theta_bar));
    const long last = static_cast<long>(std::floor(hi + slack - theta_bar));
    if (last < first) throw DomainError("no winding branch inside the displacement interval" + diag.str());
    if (last > first) throw DomainError("ambiguous winding branch: " + std::to_string(last - first + 1) + " candidates" + diag.str());
    return first;
}

double omega_tilde(const LiftedMatrix& g) {
    const double theta = omega_bar(g.m) / kPi;
    DisplacementInterval iv = displacement_interval(g);
    long n = select_winding_integer(theta, iv.lo, iv.hi);
    return kPi * (theta + static_cast<double>(n));
}

Motion Motion::make(const LiftedMatrix& g, double s) {
    if (!std::isfinite(s)) throw DomainError("central parameter is not finite");
    double n = std::floor(s);
    double s0 = s - n;
    if (s0 >= 1.0) {
        s0 -= 1.0;
        n += 1.0;
    }
    LiftedMatrix h = g;
    if (n != 0.0) {
        // g k(n): the matrix changes sign with n's parity, t shifts by n.
        if (std::fmod(std::fabs(n), 2.0) == 1.0) h.m = -h.m;
        h.t += n;
    }
    return {h, s0};
}

Motion compose(const Motion& x, const Motion& y) { return Motion::make(compose(x.g, y.g), x.s + y.s); }
Motion invert(const Motion& x) { return Motion::make(invert(x.g), -x.s); }
double wind(const Motion& x) { return omega_tilde(x.g) / kPi + x.s; }

std::string to_string(ConjKind k) {
    switch (k) {
        case ConjKind::central: return "central";
        case ConjKind::elliptic: return "elliptic";
        case ConjKind::hyperbolic: return "hyperbolic";
        case ConjKind::parabolic_positive: return "parabolic-positive";
        case ConjKind::parabolic_negative: return "parabolic-negative";
    }
    return "unknown";
}

ConjKind classify(const Matrix2& m0, double tol) {
    Matrix2 m = m0.trace() < 0 ? -m0 : m0;
    if ((m - Matrix2::identity()).norm_inf() <= tol) return ConjKind::central;
    const double tr = m.trace();
    if (tr < 2.0 - tol) return ConjKind::elliptic;
    if (tr > 2.0 + tol) return ConjKind::hyperbolic;
    // Rotation-invariant part of the traceless component; its sign separates
    // the two parabolic classes ([[1,1],[0,1]] has b - c > 0).
    return (m.b - m.c) > 0 ? ConjKind::parabolic_positive : ConjKind::parabolic_negative;
}

ConjClassDescriptor describe(const Motion& x) {
    ConjClassDescriptor d;
    d.kind = classify(x.g.m);
    d.wind = wind(x);
    if (d.kind == ConjKind::hyperbolic) d.trace_abs = std::fabs(x.g.m.trace());
    if (d.kind == ConjKind::elliptic) d.omega_bar = omega_bar(x.g.m);
    return d;
}

bool conjugate_test(const Motion& x, const Motion& y, double tol) {
    ConjClassDescriptor dx = describe(x), dy = describe(y);
    if (dx.kind != dy.kind) return false;
    if (std::fabs(dx.wind - dy.wind) > tol) return false;
    if (dx.kind == ConjKind::hyperbolic && std::fabs(dx.trace_abs - dy.trace_abs) > tol * std::max(1.0, dx.trace_abs)) return false;
    if (dx.kind == ConjKind::elliptic) {
        double diff = std::fabs(dx.omega_bar - dy.omega_bar);
        if (std::min(diff, kPi - diff) > tol) return false;
    }
    return true;
}

}  // namespace seifertvol
