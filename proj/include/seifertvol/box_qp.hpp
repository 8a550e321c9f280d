#pragma once

#include "seifertvol/linalg.hpp"

#include <cstddef>
#include <vector>

namespace seifertvol {

// maximize y^T A y  subject to |y_i| <= c_i and (optionally) N y = 0.
template <class T>
struct BoxQP {
    Matrix<T> a;
    std::vector<T> c;
    Matrix<T> equality;  // p x n, p may be 0
};

template <class T>
struct BoxQPResult {
    T value;
    std::vector<T> maximizer;
    std::size_t patterns = 0;    // active-set patterns tried
    std::size_t candidates = 0;  // feasible stationary/vertex points seen
};

inline constexpr std::size_t kBoxQPMaxDimension = 16;

// Every coordinate is fixed at +c, -c, or free; free coordinates satisfy the
// KKT stationarity system. Ties go to the lexicographically smallest y.
// `tol` only matters for double (pivoting and feasibility).
template <class T>
BoxQPResult<T> maximize_box_qp(const BoxQP<T>& q, double tol = 1e-12);

extern template BoxQPResult<Rational> maximize_box_qp(const BoxQP<Rational>&, double);
extern template BoxQPResult<double> maximize_box_qp(const BoxQP<double>&, double);

}  // namespace seifertvol
