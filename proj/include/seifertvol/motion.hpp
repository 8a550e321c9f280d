#pragma once

#include <string>
#include <utility>

namespace seifertvol {

struct Tolerances {
    double structural = 1e-9;
    double comparison = 1e-8;
};

// Resolved once at startup (CLI flag or SEIFERTVOL_TOL); read-only afterwards.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& t);

struct Matrix2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Matrix2 identity() { return {}; }
    // Rotation by angle pi*r; k(1) = -I.
    static Matrix2 rotation(double r);

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    // Adjugate; the inverse for unit determinant.
    Matrix2 inverse() const { return {d, -b, -c, a}; }
    Matrix2 operator-() const { return {-a, -b, -c, -d}; }
    double norm_inf() const;  // max |entry|
    // Divide by sqrt(det); requires det > 0.
    Matrix2 renormalized() const;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x, const Matrix2& y);
Matrix2 operator+(const Matrix2& x, const Matrix2& y);
// Entrywise max-norm distance in PSL: min over the sign of y.
double psl_distance(const Matrix2& x, const Matrix2& y);
Matrix2 commutator(const Matrix2& x, const Matrix2& y);  // x y x^-1 y^-1

// angle/pi of m (cos pi x, sin pi x), in [0,1).
double circle_map(const Matrix2& m, double x);

// Element of the universal cover: matrix (up to sign) plus t = phi(0).
struct LiftedMatrix {
    Matrix2 m;
    double t = 0.0;

    // Validates det and that frac(t) matches circle_map(m, 0).
    static LiftedMatrix make(const Matrix2& m, double t);
    static LiftedMatrix identity() { return {}; }
    static LiftedMatrix rotation(double r) { return {Matrix2::rotation(r), r}; }
    // t = circle_map(m, 0) in [0,1).
    static LiftedMatrix canonical(const Matrix2& m);
    // t in (-1/2, 1/2]: the lift near the identity for m near +-I.
    static LiftedMatrix near_identity(const Matrix2& m);
};

double lift_eval(const LiftedMatrix& g, double y);
LiftedMatrix compose(const LiftedMatrix& g1, const LiftedMatrix& g2);
LiftedMatrix invert(const LiftedMatrix& g);
LiftedMatrix commutator(const LiftedMatrix& x, const LiftedMatrix& y);
// Distance between lifted elements: matrix PSL distance and |t1 - t2|.
double lifted_distance(const LiftedMatrix& x, const LiftedMatrix& y);

double omega_bar(const Matrix2& m);

struct DisplacementInterval {
    double lo;
    double hi;
};

// Range of lift_eval(g, x) - x over [0, 1].
DisplacementInterval displacement_interval(const LiftedMatrix& g);
// Unique n with theta_bar + n inside [lo - slack, hi + slack]; throws
// DomainError when there is none, more than one, or hi - lo >= 1.
long select_winding_integer(double theta_bar, double lo, double hi, double slack = 1e-7);
double omega_tilde(const LiftedMatrix& g);

struct Motion {
    LiftedMatrix g;
    double s = 0.0;

    // Normalizes s into [0,1) using g[s + n] = (g k(n))[s].
    static Motion make(const LiftedMatrix& g, double s);
};

Motion compose(const Motion& x, const Motion& y);
Motion invert(const Motion& x);
double wind(const Motion& x);

enum class ConjKind { central, elliptic, hyperbolic, parabolic_positive, parabolic_negative };
std::string to_string(ConjKind k);

ConjKind classify(const Matrix2& m, double tol = 1e-10);

struct ConjClassDescriptor {
    ConjKind kind;
    double wind = 0.0;
    double trace_abs = 0.0;   // hyperbolic only
    double omega_bar = 0.0;   // elliptic only
};

ConjClassDescriptor describe(const Motion& x);
bool conjugate_test(const Motion& x, const Motion& y, double tol = 1e-8);

}  // namespace seifertvol
