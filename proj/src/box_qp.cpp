#include "seifertvol/box_qp.hpp"

#include "seifertvol/errors.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace seifertvol {

namespace {

template <class T>
bool within(const T& x, const T& bound, double tol) {
    if constexpr (FieldTraits<T>::exact) {
        return abs(x) <= bound;
    } else {
        return std::fabs(x) <= bound + tol * std::max(1.0, bound);
    }
}

template <class T>
bool lex_less(const std::vector<T>& x, const std::vector<T>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace

template <class T>
BoxQPResult<T> maximize_box_qp(const BoxQP<T>& q, double tol) {
    using F = FieldTraits<T>;
    const std::size_t n = q.c.size();
    if (q.a.rows() != n || q.a.cols() != n) throw DomainError("box QP: matrix and radii dimensions disagree");
    if (n > kBoxQPMaxDimension) throw DomainError("box QP: dimension " + std::to_string(n) + " exceeds enumeration guard");
    const std::size_t p = q.equality.rows();
    if (p > 0 && q.equality.cols() != n) throw DomainError("box QP: equality constraint width disagrees");
    for (const auto& ci : q.c)
        if (ci < T(0)) throw DomainError("box QP: negative radius");

    std::optional<BoxQPResult<T>> best;
    std::size_t patterns = 0, candidates = 0;

    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<std::size_t> fr, fx;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1ul ? fr : fx).push_back(i);
        const std::size_t nf = fr.size(), nx = fx.size(), nk = nf + p;

        // [ A_FF  N_F^T | -A_FX ]
        // [ N_F   0     | -N_X  ]
        Matrix<T> aug(nk, nk + nx);
        for (std::size_t r = 0; r < nf; ++r) {
            for (std::size_t s = 0; s < nf; ++s) aug(r, s) = q.a(fr[r], fr[s]);
            for (std::size_t s = 0; s < p; ++s) aug(r, nf + s) = q.equality(s, fr[r]);
            for (std::size_t s = 0; s < nx; ++s) aug(r, nk + s) = -q.a(fr[r], fx[s]);
        }
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t s = 0; s < nf; ++s) aug(nf + r, s) = q.equality(r, fr[s]);
            for (std::size_t s = 0; s < nx; ++s) aug(nf + r, nk + s) = -q.equality(r, fx[s]);
        }
        auto pivots = rref(aug, tol, nk);

        for (unsigned long signs = 0; signs < (1ul << nx); ++signs) {
            ++patterns;
            std::vector<T> yx(nx);
            for (std::size_t s = 0; s < nx; ++s) yx[s] = ((signs >> s) & 1ul) ? -q.c[fx[s]] : q.c[fx[s]];
            auto row_value = [&](std::size_t r) {
                T v(0);
                for (std::size_t s = 0; s < nx; ++s) v += aug(r, nk + s) * yx[s];
                return v;
            };
            bool consistent = true;
            for (std::size_t r = pivots.size(); r < nk && consistent; ++r) {
                T v = row_value(r);
                consistent = F::is_zero(v, tol * 1e3);
            }
            if (!consistent) continue;

            std::vector<T> z(nk, T(0));
            for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = row_value(r);
            std::vector<T> y(n, T(0));
            bool feasible = true;
            for (std::size_t s = 0; s < nf && feasible; ++s) {
                y[fr[s]] = z[s];
                feasible = within(z[s], q.c[fr[s]], tol);
            }
            if (!feasible) continue;
            for (std::size_t s = 0; s < nx; ++s) y[fx[s]] = yx[s];
            ++candidates;

            T value = quadratic_form(q.a, y);
            bool take = false;
            if (!best) {
                take = true;
            } else if constexpr (F::exact) {
                take = value > best->value || (value == best->value && lex_less(y, best->maximizer));
            } else {
                double slack = tol * std::max(1.0, std::fabs(best->value));
                take = value > best->value + slack || (std::fabs(value - best->value) <= slack && lex_less(y, best->maximizer));
            }
            if (take) best = BoxQPResult<T>{value, y, 0, 0};
        }
    }
    if (!best) throw DomainError("box QP: every active-set system was degenerate");
    best->patterns = patterns;
    best->candidates = candidates;
    return *best;
}

template BoxQPResult<Rational> maximize_box_qp(const BoxQP<Rational>&, double);
template BoxQPResult<double> maximize_box_qp(const BoxQP<double>&, double);

}  // namespace seifertvol
