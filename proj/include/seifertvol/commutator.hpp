#pragma once

#include "seifertvol/motion.hpp"

namespace seifertvol {

// [[cos t, l sin t], [-sin t / l, cos t]]
Matrix2 elliptic_canonical(double lambda, double theta);
// [[cosh t, l sinh t], [sinh t / l, cosh t]]
Matrix2 hyperbolic_canonical(double lambda, double tau);
// [[1, u], [0, 1]], inverted: [[1, -u], [0, 1]]
Matrix2 parabolic_canonical(double u, bool inverted);

struct CanonicalForm {
    ConjKind kind = ConjKind::elliptic;  // elliptic, hyperbolic or parabolic_*
    double r = 0.0;                      // conjugator is k(r)
    Matrix2 conjugator;
    double lambda = 1.0;
    double theta = 0.0;
    double tau = 0.0;
    double u = 0.0;
    bool inverted = false;
    double residual = 0.0;  // PSL distance of S C S^-1 from the input

    Matrix2 canonical() const;
};

CanonicalForm canonical_form(const Matrix2& m);

struct FactorPair {
    Matrix2 a;
    Matrix2 b;
    double residual = 0.0;  // PSL distance of [a, b] from the target
};

FactorPair factor_elliptic(double lambda, double theta);
FactorPair factor_hyperbolic(double lambda, double tau);
FactorPair factor_parabolic(double u, bool inverted);
FactorPair factor(const Matrix2& m);

struct LiftedFactorPair {
    LiftedMatrix a;
    LiftedMatrix b;
    long deck_shift = 0;    // [a, b] k(deck_shift) = gamma
    double residual = 0.0;  // lifted distance of [a, b] k(deck_shift) from gamma
};

inline constexpr double kNearIdentityRadius = 0.1;

LiftedFactorPair factor_lifted(const LiftedMatrix& gamma);

}  // namespace seifertvol
