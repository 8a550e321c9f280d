#pragma once

#include "seifertvol/manifold.hpp"
#include "seifertvol/motion.hpp"
#include "seifertvol/volume.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace seifertvol {

using DirectedEdge = std::pair<std::string, std::string>;

// a_{v,w} for every directed edge end (v, w).
struct WaldhausenData {
    std::map<DirectedEdge, long> a;
};

std::vector<std::string> waldhausen_violations(const FormattedGraphManifold& m, const WaldhausenData& w);
// Per vertex, an integer solution of sum_w a_{v,w} / b_{v,w} = k_v via
// extended gcd over the b-denominators.
WaldhausenData canonical_waldhausen(const FormattedGraphManifold& m);

// Integer-valued xi; throws unless every value is an integer.
std::map<std::string, long> integral_xi(const FormattedGraphManifold& m, const XiVector& xi);

// (xi(w) - a_{v,w} xi(v)) / b_{v,w} over Q. At each vertex these sum to
// -(E xi)(v); for a fiber twist direction (E alpha = 0) the sums vanish.
std::map<DirectedEdge, Rational> boundary_values(const FormattedGraphManifold& m, const WaldhausenData& w,
                                                 const std::map<std::string, Rational>& xi);

std::map<DirectedEdge, long> boundary_targets(const FormattedGraphManifold& m, const WaldhausenData& w,
                                              const std::map<std::string, long>& xi);

using LiftedPair = std::pair<LiftedMatrix, LiftedMatrix>;

// Standard generators of a genus-h surface group from the regular 4h-gon
// (h >= 2), canonical lifts; product of lifted commutators is k(2 - 2h).
const std::vector<LiftedPair>& fuchsian_generators(long h);
LiftedMatrix product_of_commutators(const std::vector<LiftedPair>& pairs);
// g lifted pairs whose commutator product is the central element k(N).
std::vector<LiftedPair> realize_central_product(long g, long n);

struct VertexPresentation {
    std::string vertex;
    long genus = 0;
    long boundary_count = 0;
    std::vector<LiftedPair> pairs;                      // x_i, y_i
    std::vector<std::pair<std::string, long>> boundary; // s_j: (neighbour, central t)
    long fiber = 0;                                     // f_v -> central xi(v)
};

struct RepresentationSketch {
    FormattedGraphManifold manifold;
    WaldhausenData waldhausen;
    std::map<std::string, long> xi;
    std::map<DirectedEdge, long> targets;
    std::map<std::string, VertexPresentation> vertices;
};

RepresentationSketch build_representation(const FormattedGraphManifold& m, const WaldhausenData& w, const XiVector& xi);

struct VerificationReport {
    std::map<std::string, double> relation_residual;
    std::map<std::string, double> recomputed_xi;
    double recomputed_volume = 0.0;  // pi^2 coefficient, float path
    Rational exact_volume;           // pi^2 coefficient, exact formula
    double volume_relative_error = 0.0;
    bool relations_ok = true;
    bool xi_ok = true;
    bool volume_ok = true;
    bool torus_ok = true;
    std::vector<std::string> failures;

    bool passed() const { return relations_ok && xi_ok && volume_ok && torus_ok; }
};

VerificationReport verify_representation(const RepresentationSketch& sketch);

}  // namespace seifertvol
