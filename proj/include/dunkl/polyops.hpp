#pragma once

#include <limits>

#include "dunkl/group.hpp"

namespace dunkl {

constexpr int ORD_INFINITE = std::numeric_limits<int>::max();

// Change of coordinates adapted to a linear form alpha: y_p = alpha(x)
// (p = first coordinate with nonzero alpha-coefficient), y_j = x_j
// otherwise. Divisibility by alpha becomes divisibility by the single
// variable y_p.
class AlphaCoords {
public:
    AlphaCoords(const CycCtxPtr& ctx, const Vec& alpha) : ctx_(ctx) {
        int n = static_cast<int>(alpha.size());
        while (alpha[static_cast<size_t>(pivot_)].is_zero()) ++pivot_;
        fwd_ = identity_matrix(ctx, n);
        fwd_[static_cast<size_t>(pivot_)] = alpha;
        auto inv = mat_inverse(fwd_);
        if (!inv) throw error("degenerate linear form");
        bwd_ = *inv;
    }

    int pivot() const { return pivot_; }
    // f(x) expressed in y-coordinates.
    MPoly to(const MPoly& f) const { return f.substitute_linear(bwd_); }
    // g(y) expressed back in x-coordinates.
    MPoly from(const MPoly& g) const { return g.substitute_linear(fwd_); }

private:
    CycCtxPtr ctx_;
    int pivot_ = 0;
    Mat fwd_, bwd_;
};

// Largest m with alpha^m | f; ORD_INFINITE for f = 0.
inline int ord_along(const Vec& alpha, const MPoly& f) {
    if (f.is_zero()) return ORD_INFINITE;
    AlphaCoords ac(f.context(), alpha);
    MPoly g = ac.to(f);
    int ord = ORD_INFINITE;
    for (const auto& [e, c] : g.terms()) ord = std::min(ord, e[static_cast<size_t>(ac.pivot())]);
    return ord;
}

inline int ord_along(const ReflectionGroup& g, int h, const MPoly& f) {
    return ord_along(g.hyperplanes()[static_cast<size_t>(h)].alpha, f);
}

// Exact quotient f / alpha^m; throws not_divisible when the order is short.
inline MPoly exact_divide(const Vec& alpha, const MPoly& f, int m = 1) {
    if (f.is_zero() || m == 0) return f;
    AlphaCoords ac(f.context(), alpha);
    MPoly g = ac.to(f);
    MPoly shifted(f.context(), f.nvars());
    for (const auto& [e, c] : g.terms()) {
        if (e[static_cast<size_t>(ac.pivot())] < m)
            throw not_divisible("polynomial is not divisible by the linear form");
        Exps d = e;
        d[static_cast<size_t>(ac.pivot())] -= m;
        shifted.add_term(d, c);
    }
    return ac.from(shifted);
}

// f mod alpha^m: the part of f with alpha-order < m.
inline MPoly remainder_mod(const Vec& alpha, const MPoly& f, int m) {
    if (f.is_zero()) return f;
    AlphaCoords ac(f.context(), alpha);
    MPoly g = ac.to(f);
    MPoly low(f.context(), f.nvars());
    for (const auto& [e, c] : g.terms())
        if (e[static_cast<size_t>(ac.pivot())] < m) low.add_term(e, c);
    return ac.from(low);
}

// Reynolds averaging operator pi(f) = (1/|W|) sum_w w.f.
inline MPoly reynolds(const ReflectionGroup& g, const MPoly& f) {
    MPoly sum = MPoly::zero(g.context(), g.dim());
    for (int w = 0; w < g.order(); ++w) sum += g.act(w, f);
    return sum * Cyc::from_rat(g.context(), Rat(1, g.order()));
}

inline bool is_invariant(const ReflectionGroup& g, const MPoly& f) {
    for (int w : g.generator_indices())
        if (!(g.act(w, f) == f)) return false;
    return true;
}

// Delta_s = (1/alpha_s)(1 - s) for a pseudoreflection s.
inline MPoly divided_difference(const ReflectionGroup& g, int s, const MPoly& f) {
    for (const auto& h : g.hyperplanes()) {
        for (int w : h.stabilizer) {
            if (w != s || s == 0) continue;
            return exact_divide(h.alpha, f - g.act(s, f));
        }
    }
    throw error("element is not a pseudoreflection");
}

// Basis of the degree-d slice of C[V]^W, deterministic.
inline std::vector<MPoly> invariant_basis(const ReflectionGroup& g, int d) {
    auto mons = monomials_of_degree(g.dim(), d);
    // Rows: Reynolds images of monomials, expressed in the monomial basis.
    Mat rows;
    for (const auto& e : mons) {
        MPoly img = reynolds(g, MPoly::monomial(g.context(), e, Cyc::from_int(g.context(), 1)));
        Vec row;
        row.reserve(mons.size());
        for (const auto& m : mons) row.push_back(img.coeff(m));
        rows.push_back(std::move(row));
    }
    row_reduce(rows);
    std::vector<MPoly> basis;
    for (const auto& row : rows) {
        MPoly p(g.context(), g.dim());
        bool nz = false;
        for (size_t j = 0; j < mons.size(); ++j) {
            if (row[j].is_zero()) continue;
            p.add_term(mons[j], row[j]);
            nz = true;
        }
        if (nz) basis.push_back(std::move(p));
    }
    return basis;
}

// Kernel of a list of linear conditions on the span of the given monomials,
// returned as polynomials (deterministic basis).
inline std::vector<MPoly> graded_solve(const CycCtxPtr& ctx, const std::vector<Exps>& mons,
                                       const Mat& conditions) {
    std::vector<MPoly> out;
    auto basis = kernel_basis(conditions, static_cast<int>(mons.size()), ctx);
    for (const auto& v : basis) {
        MPoly p(ctx, mons.empty() ? 0 : static_cast<int>(mons[0].size()));
        for (size_t j = 0; j < mons.size(); ++j) p.add_term(mons[j], v[j]);
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text syntax for polynomials: terms like "3/2*x1^2*x2 - z3*x3", where zN
// denotes a primitive N-th root of unity (N must divide the conductor).

inline MPoly parse_poly(const CycCtxPtr& ctx, int nvars, const std::string& text) {
    MPoly out(ctx, nvars);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&]() -> long {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw parse_error("expected number at position " + std::to_string(start));
        return std::stol(text.substr(start, pos - start));
    };
    skip_ws();
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -1;
            ++pos;
        } else if (!first) {
            throw parse_error("expected '+' or '-' at position " + std::to_string(pos));
        }
        first = false;
        // One term: '*'-separated factors.
        Cyc coeff = Cyc::from_int(ctx, sign);
        Exps exps(static_cast<size_t>(nvars), 0);
        bool more = true;
        while (more) {
            skip_ws();
            if (pos >= text.size()) throw parse_error("unexpected end of input");
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                long num = read_int();
                long den = 1;
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    den = read_int();
                    if (den == 0) throw division_by_zero();
                }
                coeff *= Cyc::from_rat(ctx, Rat(num, den));
            } else if (c == 'x' || c == 'z') {
                ++pos;
                long idx = read_int();
                int exp = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    exp = static_cast<int>(read_int());
                }
                if (c == 'x') {
                    if (idx < 1 || idx > nvars)
                        throw parse_error("variable x" + std::to_string(idx) + " out of range");
                    exps[static_cast<size_t>(idx - 1)] += exp;
                } else {
                    Cyc z = Cyc::root_of_unity(ctx, static_cast<int>(idx));
                    for (int t = 0; t < exp; ++t) coeff *= z;
                }
            } else {
                throw parse_error(std::string("unexpected character '") + c + "'");
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
            } else {
                more = false;
            }
        }
        out.add_term(exps, coeff);
        skip_ws();
    }
    return out;
}

}  // namespace dunkl
