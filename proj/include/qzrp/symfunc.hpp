#pragma once

#include <algorithm>
#include <vector>

#include "qzrp/laurent.hpp"

namespace qzrp {

// Monomial symmetric polynomial m_mu(x1..xn): sum over distinct rearrangements
// of mu padded with zeros to length n.  Returns zero when len(mu) > n.
inline LaurentPoly monomial_symmetric(const std::vector<int>& mu, int n) {
    LaurentPoly p(n);
    if (static_cast<int>(mu.size()) > n) return p;
    std::vector<int> exps(n, 0);
    std::copy(mu.begin(), mu.end(), exps.begin());
    std::sort(exps.begin(), exps.end());
    do {
        p.add_term(Exponent{0, exps}, 1);
    } while (std::next_permutation(exps.begin(), exps.end()));
    return p;
}

// Complete homogeneous symmetric polynomial h_r(x1..xn); h_0 = 1.
inline LaurentPoly complete_homogeneous(int r, int n) {
    if (r < 0) throw ContractViolation("complete_homogeneous: negative degree");
    LaurentPoly p(n);
    // Walk weakly increasing index tuples via an exponent odometer.
    std::vector<int> exps(n, 0);
    if (n == 0) return r == 0 ? LaurentPoly::one(0) : p;
    exps[0] = r;
    while (true) {
        p.add_term(Exponent{0, exps}, 1);
        // Next weak composition of r in reverse-lex order.
        int i = n - 2;
        while (i >= 0 && exps[i] == 0) --i;
        if (i < 0) break;
        --exps[i];
        int tail = exps[n - 1] + 1;
        exps[n - 1] = 0;
        exps[i + 1] = tail;
    }
    return p;
}

}  // namespace qzrp
