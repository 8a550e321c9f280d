#include "seifertvol/euler_operator.hpp"

#include "seifertvol/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seifertvol {

RealMatrix EulerOperator::to_real() const {
    RealMatrix r(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) r(i, j) = entries(i, j).to_double();
    return r;
}

EulerOperator build_euler_operator(const FormattedGraphManifold& m) {
    ensure_valid(m);
    EulerOperator e;
    e.index = m.vertex_ids();
    e.entries = RationalMatrix(e.index.size(), e.index.size());
    for (std::size_t i = 0; i < e.index.size(); ++i) e.entries(i, i) = m.vertices.at(e.index[i]).k;
    for (const auto& edge : m.edges) {
        std::size_t i = m.index_of(edge.u), j = m.index_of(edge.v);
        Rational w = -(Rational(1) / edge.b);
        e.entries(i, j) = w;
        e.entries(j, i) = w;
    }
    return e;
}

DominanceReport is_strictly_diagonally_dominant(const FormattedGraphManifold& m) {
    ensure_valid(m);
    DominanceReport r;
    r.strict = true;
    for (const auto& id : m.vertex_ids()) {
        Rational s = abs(m.vertices.at(id).k);
        for (const auto& [w, b] : m.neighbors(id)) s -= abs(Rational(1) / b);
        if (s.sign() <= 0) r.strict = false;
        r.slack.push_back(s);
    }
    return r;
}

Rational gershgorin_eigenvalue_bound(const EulerOperator& e) {
    if (e.size() == 0) throw DomainError("empty operator");
    std::optional<Rational> best;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Rational s = abs(e.entries(i, i));
        for (std::size_t j = 0; j < e.size(); ++j)
            if (j != i) s -= abs(e.entries(i, j));
        if (s.sign() <= 0) throw DomainError("operator is not strictly diagonally dominant at " + e.index[i]);
        if (!best || s < *best) best = s;
    }
    return *best;
}

std::vector<GershgorinDisk> gershgorin_disks(const EulerOperator& e) {
    std::vector<GershgorinDisk> out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Rational r(0);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (j != i) r += abs(e.entries(i, j));
        out.push_back({e.entries(i, i).to_double(), r.to_double()});
    }
    return out;
}

std::optional<Rational> rational_cos_2pi(const Rational& x) {
    // Niven: cos(2 pi p/q) is rational only for q in {1, 2, 3, 4, 6}.
    mpz_class q = x.denominator();
    if (q == 1) return Rational(1);
    if (q == 2) return Rational(-1);
    if (q == 4) return Rational(0);
    if (q == 3) return Rational(-1, 2);
    if (q == 6) return Rational(1, 2);
    return std::nullopt;
}

std::vector<CirculantEigenvalue> circulant_spectrum(long n, const Rational& k, const Rational& b, long d) {
    if (n < 1 || d < 1 || n * d < 3) throw DomainError("circulant spectrum needs nd >= 3");
    if (b.is_zero()) throw DomainError("circulant spectrum needs b != 0");
    const long nd = n * d;
    const Rational two_over_b = Rational(2) / b;
    std::vector<CirculantEigenvalue> out;
    for (long m = 0; m <= nd / 2; ++m) {
        CirculantEigenvalue ev;
        ev.m = m;
        ev.multiplicity = (m == 0 || 2 * m == nd) ? 1 : 2;
        if (auto c = rational_cos_2pi(Rational(m, nd))) {
            ev.exact = k - two_over_b * *c;
            ev.value = ev.exact->to_double();
        } else {
            ev.value = k.to_double() - two_over_b.to_double() * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(nd));
        }
        out.push_back(ev);
    }
    return out;
}

std::pair<RealVector, RealVector> circulant_eigenvectors(long big_n, long m) {
    RealVector phi(static_cast<std::size_t>(big_n)), psi(static_cast<std::size_t>(big_n));
    const bool single = (m == 0 || 2 * m == big_n);
    const double scale = single ? std::sqrt(1.0 / static_cast<double>(big_n)) : std::sqrt(2.0 / static_cast<double>(big_n));
    for (long j = 0; j < big_n; ++j) {
        double arg = 2.0 * std::numbers::pi * static_cast<double>(m * j) / static_cast<double>(big_n);
        phi[static_cast<std::size_t>(j)] = scale * std::cos(arg);
        psi[static_cast<std::size_t>(j)] = single ? 0.0 : scale * std::sin(arg);
    }
    return {phi, psi};
}

SpectralSummary numeric_spectrum(const EulerOperator& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    SpectralSummary s;
    s.kernel_dimension = e.size() - rank(e.entries);
    if (n == 0) return s;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = e.entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) s.eigenvalues.push_back(ev(i));
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    // The kernel_dimension smallest |lambda| are the exact zeros.
    std::vector<double> mags;
    for (double x : s.eigenvalues) mags.push_back(std::fabs(x));
    std::sort(mags.begin(), mags.end());
    if (s.kernel_dimension < mags.size()) s.min_abs_nonzero = mags[s.kernel_dimension];
    return s;
}

std::vector<RationalVector> rational_kernel(const EulerOperator& e) { return kernel_basis(e.entries); }

}  // namespace seifertvol
