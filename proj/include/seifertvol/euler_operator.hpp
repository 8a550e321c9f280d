#pragma once

#include "seifertvol/linalg.hpp"
#include "seifertvol/manifold.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seifertvol {

struct EulerOperator {
    std::vector<std::string> index;  // lexicographic vertex order
    RationalMatrix entries;

    std::size_t size() const { return index.size(); }
    RealMatrix to_real() const;
};

EulerOperator build_euler_operator(const FormattedGraphManifold& m);

struct DominanceReport {
    bool strict = false;
    std::vector<Rational> slack;  // |k_v| - sum |1/b|, in vertex index order
};

DominanceReport is_strictly_diagonally_dominant(const FormattedGraphManifold& m);
// min over rows of |E_vv| - sum_{w != v} |E_vw|; throws DomainError unless positive.
Rational gershgorin_eigenvalue_bound(const EulerOperator& e);

struct GershgorinDisk {
    double center;
    double radius;
};
std::vector<GershgorinDisk> gershgorin_disks(const EulerOperator& e);

// cos(2 pi x) when it is rational (denominator of x in {1,2,3,4,6}).
std::optional<Rational> rational_cos_2pi(const Rational& x);

struct CirculantEigenvalue {
    long m;
    double value;
    int multiplicity;
    std::optional<Rational> exact;  // set whenever the eigenvalue is rational
};

// Spectrum of the nd-cycle operator with diagonal k and neighbour entries -1/b.
std::vector<CirculantEigenvalue> circulant_spectrum(long n, const Rational& k, const Rational& b, long d);
// Orthonormal eigenvector pair (Phi_m, Psi_m) on Z/NZ; Psi is zero for m = 0, N/2.
std::pair<RealVector, RealVector> circulant_eigenvectors(long big_n, long m);

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    double min_abs_nonzero = 0.0;     // 0 when every eigenvalue is zero
    std::size_t kernel_dimension = 0; // exact
};

SpectralSummary numeric_spectrum(const EulerOperator& e);
std::vector<RationalVector> rational_kernel(const EulerOperator& e);

}  // namespace seifertvol
