#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qzrp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Contract violations are programmer errors (bad preconditions), distinct
// from budget refusals which are environmental.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    long long required;
    long long allowed;
    BudgetExceeded(long long req, long long allow)
        : std::runtime_error("state-space budget exceeded: required " + std::to_string(req) +
                             ", allowed " + std::to_string(allow) +
                             " (set QZRP_BUDGET or --budget to raise)"),
          required(req), allowed(allow) {}
};

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline BigRational rational_pow(const BigRational& base, long e) {
    if (e == 0) return BigRational(1);
    if (e < 0) {
        if (base == 0) throw ContractViolation("0 raised to a negative power");
        BigRational inv = BigRational(denominator(base), numerator(base));
        return rational_pow(inv, -e);
    }
    BigRational r = 1, b = base;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Parses "p/q" or "p" into an exact rational.
inline BigRational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ContractViolation("zero denominator in '" + s + "'");
        return BigRational(num, den);
    } catch (const std::runtime_error&) {
        throw ContractViolation("cannot parse rational '" + s + "'");
    }
}

inline std::string rational_str(const BigRational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace qzrp
