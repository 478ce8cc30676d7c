#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "qzrp/numeric.hpp"

namespace qzrp {

// Exponent of one Laurent monomial: t^t_exp * x1^x[0] * ... * xn^x[n-1].
// Negative entries are allowed everywhere.  Ordered lexicographically on
// (t_exp, x); this order is the canonical term order used for serialization.
struct Exponent {
    int t_exp = 0;
    std::vector<int> x;

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.t_exp == b.t_exp && a.x == b.x;
    }
    friend bool operator<(const Exponent& a, const Exponent& b) {
        if (a.t_exp != b.t_exp) return a.t_exp < b.t_exp;
        return a.x < b.x;
    }
};

// Sparse multivariate Laurent polynomial in t, x1..xn with BigInt
// coefficients.  Zero coefficients are never stored.  The ambient variable
// count n is fixed at construction; mixing polynomials with different n is a
// contract violation.
class LaurentPoly {
  public:
    explicit LaurentPoly(int nvars = 0) : n_(nvars) {
        if (nvars < 0) throw ContractViolation("negative variable count");
    }

    static LaurentPoly zero(int nvars) { return LaurentPoly(nvars); }

    static LaurentPoly constant(int nvars, BigInt c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[Exponent{0, std::vector<int>(nvars, 0)}] = std::move(c);
        return p;
    }

    static LaurentPoly one(int nvars) { return constant(nvars, 1); }

    // x_i^e with 1-based i.
    static LaurentPoly variable(int nvars, int i, int e = 1) {
        if (i < 1 || i > nvars) throw ContractViolation("variable index out of range");
        LaurentPoly p(nvars);
        Exponent ex{0, std::vector<int>(nvars, 0)};
        ex.x[i - 1] = e;
        p.terms_[ex] = 1;
        return p;
    }

    static LaurentPoly t_power(int nvars, int e) {
        LaurentPoly p(nvars);
        p.terms_[Exponent{e, std::vector<int>(nvars, 0)}] = 1;
        return p;
    }

    static LaurentPoly monomial(int nvars, BigInt coeff, Exponent e) {
        if (static_cast<int>(e.x.size()) != nvars)
            throw ContractViolation("exponent arity mismatch");
        LaurentPoly p(nvars);
        if (coeff != 0) p.terms_[std::move(e)] = std::move(coeff);
        return p;
    }

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponent, BigInt>& terms() const { return terms_; }

    bool is_monomial() const { return terms_.size() == 1; }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->second == 1 &&
               terms_.begin()->first == Exponent{0, std::vector<int>(n_, 0)};
    }

    BigInt coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(const Exponent& e, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        LaurentPoly r(a.n_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e{ea.t_exp + eb.t_exp, ea.x};
                for (int i = 0; i < a.n_; ++i) e.x[i] += eb.x[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly& operator*=(const BigInt& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend LaurentPoly operator*(LaurentPoly a, const BigInt& c) { return a *= c; }
    friend LaurentPoly operator*(const BigInt& c, LaurentPoly a) { return a *= c; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    // Embeds into a larger ambient ring (new variables get exponent 0).
    LaurentPoly lifted(int new_nvars) const {
        if (new_nvars < n_) throw ContractViolation("cannot lift to fewer variables");
        LaurentPoly r(new_nvars);
        for (const auto& [e, c] : terms_) {
            Exponent ne{e.t_exp, e.x};
            ne.x.resize(new_nvars, 0);
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    // x_i -> x_{i+offset}; the result lives in nvars()+offset variables.
    LaurentPoly shifted_vars(int offset) const {
        if (offset < 0) throw ContractViolation("negative shift");
        LaurentPoly r(n_ + offset);
        for (const auto& [e, c] : terms_) {
            Exponent ne{e.t_exp, std::vector<int>(n_ + offset, 0)};
            for (int i = 0; i < n_; ++i) ne.x[i + offset] = e.x[i];
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    // perm is 0-based: old variable i becomes new variable perm[i].
    LaurentPoly permuted_vars(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != n_) throw ContractViolation("bad permutation size");
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) {
            Exponent ne{e.t_exp, std::vector<int>(n_, 0)};
            for (int i = 0; i < n_; ++i) ne.x[perm[i]] = e.x[i];
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    // Swap x_i and x_j (1-based).
    LaurentPoly swapped_vars(int i, int j) const {
        std::vector<int> perm(n_);
        for (int k = 0; k < n_; ++k) perm[k] = k;
        std::swap(perm[i - 1], perm[j - 1]);
        return permuted_vars(perm);
    }

    // Cyclic relabeling x_i -> x_{i+1}, x_n -> x_1.
    LaurentPoly rotated_vars() const {
        std::vector<int> perm(n_);
        for (int k = 0; k < n_; ++k) perm[k] = (k + 1) % n_;
        return permuted_vars(perm);
    }

    // True iff invariant under every transposition of consecutive members of
    // `vars` (1-based, sorted).  Adjacent transpositions generate the full
    // symmetric group on the subset.
    bool symmetric_under(const std::vector<int>& vars) const {
        for (std::size_t k = 0; k + 1 < vars.size(); ++k)
            if (!(swapped_vars(vars[k], vars[k + 1]) == *this)) return false;
        return true;
    }

    // x_i * d/dx_i: multiplies each coefficient by the x_i-exponent.
    LaurentPoly x_log_derivative_numerator(int i) const {
        if (i < 1 || i > n_) throw ContractViolation("variable index out of range");
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * e.x[i - 1]);
        return r;
    }

    BigRational evaluate(const std::vector<BigRational>& xs, const BigRational& tval) const {
        if (static_cast<int>(xs.size()) != n_) throw ContractViolation("evaluation arity mismatch");
        BigRational total = 0;
        for (const auto& [e, c] : terms_) {
            BigRational term(c);
            if (e.t_exp != 0) {
                if (tval == 0 && e.t_exp > 0) continue;
                term *= rational_pow(tval, e.t_exp);
            }
            for (int i = 0; i < n_; ++i)
                if (e.x[i] != 0) term *= rational_pow(xs[i], e.x[i]);
            total += term;
        }
        return total;
    }

    // Specialization t = 0.  Requires all t-exponents nonnegative.
    LaurentPoly at_t0() const {
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) {
            if (e.t_exp < 0) throw ContractViolation("t=0 specialization of a negative t-power");
            if (e.t_exp == 0) r.terms_[e] = c;
        }
        return r;
    }

    LaurentPoly substituted_t1() const {
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) r.add_term(Exponent{0, e.x}, c);
        return r;
    }

    // Componentwise minimum of exponents over all terms; only meaningful for
    // nonzero polynomials.
    Exponent min_exponents() const {
        if (is_zero()) throw ContractViolation("min_exponents of zero polynomial");
        Exponent m = terms_.begin()->first;
        for (const auto& [e, c] : terms_) {
            m.t_exp = std::min(m.t_exp, e.t_exp);
            for (int i = 0; i < n_; ++i) m.x[i] = std::min(m.x[i], e.x[i]);
        }
        return m;
    }

    Exponent max_exponents() const {
        if (is_zero()) throw ContractViolation("max_exponents of zero polynomial");
        Exponent m = terms_.begin()->first;
        for (const auto& [e, c] : terms_) {
            m.t_exp = std::max(m.t_exp, e.t_exp);
            for (int i = 0; i < n_; ++i) m.x[i] = std::max(m.x[i], e.x[i]);
        }
        return m;
    }

    // Multiply by a single monomial exponent (used to normalize Laurent
    // polynomials to honest polynomials and back).
    LaurentPoly times_monomial(const Exponent& shift, const BigInt& coeff = 1) const {
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) {
            Exponent ne{e.t_exp + shift.t_exp, e.x};
            for (int i = 0; i < n_; ++i) ne.x[i] += shift.x[i];
            r.add_term(ne, c * coeff);
        }
        return r;
    }

    BigInt integer_content() const {
        BigInt g = 0;
        for (const auto& [e, c] : terms_) {
            g = boost::multiprecision::gcd(g, c);
            if (g == 1) break;
        }
        return g;
    }

    std::string pretty() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            std::vector<std::string> factors;
            if (e.t_exp != 0)
                factors.push_back(e.t_exp == 1 ? "t" : "t^" + std::to_string(e.t_exp));
            for (int i = 0; i < n_; ++i)
                if (e.x[i] != 0)
                    factors.push_back("x" + std::to_string(i + 1) +
                                      (e.x[i] == 1 ? "" : "^" + std::to_string(e.x[i])));
            if (factors.empty()) {
                out << a.str();
            } else {
                if (a != 1) out << a.str() << "*";
                for (std::size_t k = 0; k < factors.size(); ++k) {
                    if (k) out << "*";
                    out << factors[k];
                }
            }
        }
        return out.str();
    }

  private:
    void check_arity(const LaurentPoly& o) const {
        if (n_ != o.n_) throw ContractViolation("mixed ambient variable counts");
    }

    int n_;
    std::map<Exponent, BigInt> terms_;
};

// Exact division q = p / d with q*d == p, in the polynomial-ring sense: the
// quotient must not introduce negative exponents of its own (x1 does not
// divide x1 + x2, even though monomials are units of the Laurent ring).
// Arguments are normalized by factoring out their minimal monomials; the
// residual division runs over nonnegative exponents with the lex leading
// term, and the monomial shift must stay nonnegative.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero()) throw ContractViolation("division by zero polynomial");
    int n = p.nvars();
    if (d.nvars() != n) throw ContractViolation("mixed ambient variable counts");
    if (p.is_zero()) return LaurentPoly::zero(n);

    Exponent mp = p.min_exponents(), md = d.min_exponents();
    // The divisor's positive monomial content must divide the dividend's.
    if (md.t_exp > 0 && mp.t_exp < md.t_exp) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (md.x[i] > 0 && mp.x[i] < md.x[i]) return std::nullopt;
    Exponent neg_mp{-mp.t_exp, mp.x}, neg_md{-md.t_exp, md.x};
    for (int i = 0; i < n; ++i) {
        neg_mp.x[i] = -mp.x[i];
        neg_md.x[i] = -md.x[i];
    }
    LaurentPoly rem = p.times_monomial(neg_mp);
    LaurentPoly dd = d.times_monomial(neg_md);

    auto leading = [](const LaurentPoly& q) { return std::prev(q.terms().end()); };
    auto lt_d = leading(dd);
    LaurentPoly quot(n);
    while (!rem.is_zero()) {
        auto lt_r = leading(rem);
        Exponent qe{lt_r->first.t_exp - lt_d->first.t_exp, lt_r->first.x};
        bool ok = qe.t_exp >= 0;
        for (int i = 0; ok && i < n; ++i) {
            qe.x[i] -= lt_d->first.x[i];
            if (qe.x[i] < 0) ok = false;
        }
        if (!ok || lt_r->second % lt_d->second != 0) return std::nullopt;
        BigInt qc = lt_r->second / lt_d->second;
        quot.add_term(qe, qc);
        rem -= dd.times_monomial(qe, qc);
    }
    // Restore the monomial parts: q = quot * x^(mp - md).
    Exponent shift{mp.t_exp - md.t_exp, mp.x};
    for (int i = 0; i < n; ++i) shift.x[i] = mp.x[i] - md.x[i];
    return quot.times_monomial(shift);
}

}  // namespace qzrp
