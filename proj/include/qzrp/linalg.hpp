#pragma once

#include <vector>

#include "qzrp/numeric.hpp"

namespace qzrp {

// Solves A x = b exactly for square rational A.  Rows are first scaled to
// integers, then eliminated fraction-free (Bareiss), so all intermediate
// values stay integral; back substitution runs over rationals.  Pivot choice
// is the first row with a nonzero entry, which keeps runs reproducible.
inline std::vector<BigRational> solve_linear_exact(std::vector<std::vector<BigRational>> a,
                                                   std::vector<BigRational> b) {
    const int m = static_cast<int>(a.size());
    if (m == 0) return {};
    std::vector<std::vector<BigInt>> w(m, std::vector<BigInt>(m + 1));
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(a[i].size()) != m) throw ContractViolation("non-square system");
        BigInt lcm = 1;
        for (const auto& v : a[i]) lcm = boost::multiprecision::lcm(lcm, denominator(v));
        lcm = boost::multiprecision::lcm(lcm, denominator(b[i]));
        for (int j = 0; j < m; ++j) w[i][j] = BigInt(numerator(a[i][j]) * (lcm / denominator(a[i][j])));
        w[i][m] = BigInt(numerator(b[i]) * (lcm / denominator(b[i])));
    }

    BigInt prev = 1;
    for (int k = 0; k < m; ++k) {
        int pivot = -1;
        for (int i = k; i < m; ++i)
            if (w[i][k] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw ContractViolation("singular system in exact solve");
        if (pivot != k) std::swap(w[pivot], w[k]);
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j <= m; ++j) {
                w[i][j] = (w[k][k] * w[i][j] - w[i][k] * w[k][j]) / prev;
            }
            w[i][k] = 0;
        }
        prev = w[k][k];
    }

    std::vector<BigRational> x(m);
    for (int i = m - 1; i >= 0; --i) {
        BigRational acc(w[i][m]);
        for (int j = i + 1; j < m; ++j) acc -= BigRational(w[i][j]) * x[j];
        x[i] = acc / BigRational(w[i][i]);
    }
    return x;
}

}  // namespace qzrp
