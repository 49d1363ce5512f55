#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dunkl {

// Exact arbitrary-precision rational, always in lowest terms with a
// positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};
struct conductor_mismatch : error {
    conductor_mismatch() : error("mixed cyclotomic conductors") {}
};
struct not_divisible : error {
    explicit not_divisible(const std::string& what) : error(what) {}
};
struct cap_exceeded : error {
    explicit cap_exceeded(const std::string& what) : error(what) {}
};
struct not_unitary : error {
    not_unitary() : error("generator matrix is not unitary") {}
};
struct not_central : error {
    not_central() : error("central element certificate failed") {}
};
struct not_scalar : error {
    not_scalar() : error("representation does not act by a scalar") {}
};
struct not_coxeter : error {
    not_coxeter() : error("group has a hyperplane of order > 2") {}
};
struct not_equivariant : error {
    not_equivariant() : error("operator does not commute with the group action") {}
};
struct not_invariant : error {
    not_invariant() : error("polynomial is not W-invariant") {}
};
struct singular_parameter : error {
    std::string eigenvalue;
    explicit singular_parameter(std::string ev)
        : error("singular multiplicity: -(" + ev + ") is a positive integer"),
          eigenvalue(std::move(ev)) {}
};
struct factorization_failed : error {
    explicit factorization_failed(const std::string& what) : error(what) {}
};
struct verification_failed : error {
    explicit verification_failed(const std::string& what) : error(what) {}
};
struct inconclusive : error {
    explicit inconclusive(const std::string& what) : error(what) {}
};
struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw division_by_zero();
    return Rat(num, den);
}

inline std::string to_string(const Rat& r) {
    return r.str();
}

// Parses "a" or "a/b".
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw division_by_zero();
        return Rat(num, den);
    } catch (const std::exception&) {
        throw parse_error("bad rational literal: " + s);
    }
}

inline bool is_integer(const Rat& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline Int rat_floor(const Rat& r) {
    Int n = boost::multiprecision::numerator(r);
    Int d = boost::multiprecision::denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

}  // namespace dunkl
