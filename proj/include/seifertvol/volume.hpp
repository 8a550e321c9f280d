#pragma once

#include "seifertvol/euler_operator.hpp"
#include "seifertvol/manifold.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seifertvol {

// Vertex -> fiber winding. Exact vectors carry rationals; float vectors
// only the doubles. `approx` is always populated.
struct XiVector {
    bool exact = true;
    std::map<std::string, Rational> values;
    std::map<std::string, double> approx;

    static XiVector from_exact(std::map<std::string, Rational> v);
    static XiVector from_real(std::map<std::string, double> v);
    // In the manifold's vertex index order; throws on a vertex-set mismatch.
    RationalVector exact_vector(const FormattedGraphManifold& m) const;
    RealVector real_vector(const FormattedGraphManifold& m) const;
};

XiVector xi_from_vector(const FormattedGraphManifold& m, const RationalVector& v);

// nullopt encodes an infinite torus-image order.
using TauValue = std::optional<long>;
using TauMap = std::map<std::pair<std::string, std::string>, TauValue>;
TauMap uniform_tau(const FormattedGraphManifold& m, TauValue value);
TauValue tau_at(const TauMap& tau, const std::string& u, const std::string& v);

// coefficient * pi^2, or +infinity.
struct PiSqValue {
    bool exact = true;
    bool infinite = false;
    Rational coefficient;
    double real_coefficient = 0.0;

    static PiSqValue of(const Rational& q);
    static PiSqValue of_real(double q);
    static PiSqValue infinity();
    double value() const;  // coefficient * pi^2 as a double
    // "p/q * pi^2", "<float> * pi^2" or "inf".
    std::string str() const;
};

PiSqValue volume_from_xi(const FormattedGraphManifold& m, const XiVector& xi);

std::map<std::string, Rational> mw_bounds(const FormattedGraphManifold& m, const TauMap& tau);

struct MwVertexCheck {
    std::string vertex;
    bool pass = true;
    double lhs = 0.0;    // |(E xi)(v)|
    double bound = 0.0;
    double residual = 0.0;  // lhs - bound
    std::optional<Rational> exact_lhs;
    Rational exact_bound;
};

// Tolerance applies to float xi only; exact xi is compared exactly.
std::vector<MwVertexCheck> check_mw(const FormattedGraphManifold& m, const XiVector& xi, const TauMap& tau, double tol = 1e-8);

struct SvBound {
    PiSqValue bound;
    RationalVector y;   // E xi at the optimum, index order
    RationalVector xi;  // pseudo-inverse image of y
    int branch = 1;     // +1: max of the form, -1: max of its negative
};

// sup of 4|(xi, E xi)| over |(E xi)(v)| <= bound_v (tau = infinity unless given).
SvBound sv_upper_bound(const FormattedGraphManifold& m, const std::optional<TauMap>& tau = std::nullopt);

bool virtual_realizability(const FormattedGraphManifold& m, const XiVector& xi);

struct CsvLowerBound {
    PiSqValue value;
    std::optional<XiVector> witness;
    std::size_t accepted = 0;
    std::size_t tried = 0;
};

// Sup of |4 (xi, E xi)| over samples passing virtual_realizability. With
// auto_samples, adds 0 and (1 - eps) * (SV maximizer) for eps = 10^-1..10^-4.
CsvLowerBound csv_lower_bound(const FormattedGraphManifold& m, const std::vector<XiVector>& samples, bool auto_samples = true);

PiSqValue csv_sdd_bound(const FormattedGraphManifold& m);
PiSqValue csv_constant_cyclic(long n, const Rational& chi, const Rational& k, long b);

struct GrowthWitness {
    long m = 0;
    double lambda = 0.0;
    std::optional<Rational> lambda_exact;
    PiSqValue bound;
    double spacing_limit = 0.0;  // 8 pi / (|b| n d)
    bool within_spacing = false;
};

GrowthWitness csv_growth_witness(long n, const Rational& chi, const Rational& k, long b, long d);

struct CentralBundleVolume {
    Rational e_base;
    PiSqValue vol;
};

CentralBundleVolume central_bundle_volume(long g, long e, const Rational& phi_fib);

struct CyclicParameters {
    long n;
    Rational chi;
    Rational k;
    long b;
};

// Recognizes a cycle graph with constant (chi, k, b) data.
std::optional<CyclicParameters> detect_constant_cyclic(const FormattedGraphManifold& m);

struct CsvReport {
    bool exact = false;  // only for the constant-cyclic closed form
    PiSqValue value;     // meaningful when exact
    PiSqValue lower;
    std::optional<PiSqValue> upper;
    std::string upper_source;  // "sdd" or empty
};

CsvReport csv_report(const FormattedGraphManifold& m);

}  // namespace seifertvol
