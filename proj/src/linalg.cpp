#include "seifertvol/linalg.hpp"

namespace seifertvol {

RationalMatrix symmetric_pseudo_inverse(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    auto ker = kernel_basis(a);
    if (ker.empty()) return inverse(a);
    RationalMatrix k(n, ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j) = ker[j][i];
    RationalMatrix kt = transpose(k);
    RationalMatrix proj = k * inverse(kt * k) * kt;
    return inverse(a + proj) - proj;
}

}  // namespace seifertvol
