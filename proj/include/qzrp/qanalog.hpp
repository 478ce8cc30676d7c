#pragma once

#include <numeric>
#include <vector>

#include "qzrp/laurent.hpp"

namespace qzrp {

// [m]_t = 1 + t + ... + t^{m-1}, in the ambient ring with nvars variables.
inline LaurentPoly t_integer(int m, int nvars = 0) {
    LaurentPoly p(nvars);
    for (int i = 0; i < m; ++i) p += LaurentPoly::t_power(nvars, i);
    return p;
}

// Gaussian binomial [n k]_t via the Pascal recursion
// [n k] = [n-1 k-1] + t^k [n-1 k].
inline LaurentPoly t_binomial(int n, int k, int nvars = 0) {
    if (k < 0 || k > n) return LaurentPoly::zero(nvars);
    std::vector<LaurentPoly> row(static_cast<std::size_t>(k) + 1, LaurentPoly::zero(nvars));
    row[0] = LaurentPoly::one(nvars);
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[j] = row[j - 1] + LaurentPoly::t_power(nvars, j) * row[j];
    }
    return row[k];
}

// Gaussian multinomial [m; parts]_t, the inversion generating function of
// words with the given content.  parts must be nonnegative and sum to m.
inline LaurentPoly t_multinomial(int m, const std::vector<int>& parts, int nvars = 0) {
    long long sum = 0;
    for (int p : parts) {
        if (p < 0) throw ContractViolation("t_multinomial: negative part");
        sum += p;
    }
    if (sum != m) throw ContractViolation("t_multinomial: parts do not sum to m");
    LaurentPoly result = LaurentPoly::one(nvars);
    int rest = m;
    for (int p : parts) {
        result *= t_binomial(rest, p, nvars);
        rest -= p;
    }
    return result;
}

}  // namespace qzrp
