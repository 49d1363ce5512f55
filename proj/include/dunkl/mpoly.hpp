#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "dunkl/linalg.hpp"

namespace dunkl {

using Exps = std::vector<int>;

inline int exps_degree(const Exps& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// Sparse multivariate polynomial over a cyclotomic field. Terms are kept
// in a std::map keyed by exponent vector, so iteration order (and every
// derived output) is deterministic. No zero coefficients are stored.
class MPoly {
public:
    MPoly() = default;
    MPoly(CycCtxPtr ctx, int nvars) : ctx_(std::move(ctx)), nvars_(nvars) {}

    static MPoly zero(const CycCtxPtr& ctx, int nvars) { return MPoly(ctx, nvars); }
    static MPoly constant(const CycCtxPtr& ctx, int nvars, const Cyc& c) {
        MPoly p(ctx, nvars);
        p.add_term(Exps(static_cast<size_t>(nvars), 0), c);
        return p;
    }
    static MPoly one(const CycCtxPtr& ctx, int nvars) {
        return constant(ctx, nvars, Cyc::from_int(ctx, 1));
    }
    static MPoly variable(const CycCtxPtr& ctx, int nvars, int i, int exp = 1) {
        MPoly p(ctx, nvars);
        Exps e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i)] = exp;
        p.add_term(e, Cyc::from_int(ctx, 1));
        return p;
    }
    static MPoly monomial(const CycCtxPtr& ctx, Exps e, const Cyc& c) {
        MPoly p(ctx, static_cast<int>(e.size()));
        p.add_term(std::move(e), c);
        return p;
    }
    // Linear form sum coeffs[i] * x_i.
    static MPoly linear_form(const CycCtxPtr& ctx, const Vec& coeffs) {
        MPoly p(ctx, static_cast<int>(coeffs.size()));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            Exps e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(e, coeffs[i]);
        }
        return p;
    }

    const CycCtxPtr& context() const { return ctx_; }
    int nvars() const { return nvars_; }
    const std::map<Exps, Cyc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const Cyc& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Cyc coeff(const Exps& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Cyc::zero(ctx_) : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, exps_degree(e));
        return d;
    }
    bool is_homogeneous() const {
        int d = -2;
        for (const auto& [e, c] : terms_) {
            int t = exps_degree(e);
            if (d == -2) d = t;
            else if (t != d) return false;
        }
        return true;
    }
    // Homogeneous part of total degree d.
    MPoly homogeneous_part(int d) const {
        MPoly out(ctx_, nvars_);
        for (const auto& [e, c] : terms_)
            if (exps_degree(e) == d) out.add_term(e, c);
        return out;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
        return out;
    }
    friend MPoly operator-(const MPoly& a) {
        MPoly out(a.ctx_, a.nvars_);
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
        return out;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly out(a.ctx_, a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exps e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend MPoly operator*(const MPoly& a, const Cyc& c) {
        MPoly out(a.ctx_, a.nvars_);
        if (c.is_zero()) return out;
        for (const auto& [e, t] : a.terms_) out.add_term(e, t * c);
        return out;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(int n) const {
        MPoly out = one(ctx_, nvars_);
        for (int i = 0; i < n; ++i) out *= *this;
        return out;
    }

    MPoly derivative(int var) const {
        MPoly out(ctx_, nvars_);
        for (const auto& [e, c] : terms_) {
            int k = e[static_cast<size_t>(var)];
            if (k == 0) continue;
            Exps d = e;
            --d[static_cast<size_t>(var)];
            out.add_term(d, c * Rat(k));
        }
        return out;
    }

    // Substitutes x_i -> rows[i] (a polynomial in the target variable set).
    MPoly substitute(const std::vector<MPoly>& rows) const {
        const CycCtxPtr& ctx = ctx_;
        int out_vars = rows.empty() ? nvars_ : rows[0].nvars();
        MPoly out(ctx, out_vars);
        for (const auto& [e, c] : terms_) {
            MPoly term = MPoly::constant(ctx, out_vars, c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int p = 0; p < e[i]; ++p) term *= rows[i];
            out += term;
        }
        return out;
    }

    // Linear substitution x_i -> sum_j m[i][j] x_j (same variable count).
    MPoly substitute_linear(const Mat& m) const {
        std::vector<MPoly> rows;
        rows.reserve(m.size());
        for (const auto& r : m) rows.push_back(linear_form(ctx_, r));
        return substitute(rows);
    }

    Cyc evaluate(const Vec& point) const {
        Cyc out = Cyc::zero(ctx_);
        for (const auto& [e, c] : terms_) {
            Cyc t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int p = 0; p < e[i]; ++p) t *= point[i];
            out += t;
        }
        return out;
    }

    std::string str(const std::string& var_prefix = "x") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool printed = false;
            std::string cs = c.str();
            if (cs != "1" || exps_degree(e) == 0) {
                bool needs_parens = cs.find(' ') != std::string::npos;
                os << (needs_parens ? "(" + cs + ")" : cs);
                printed = true;
            }
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << var_prefix << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
                printed = true;
            }
        }
        return os.str();
    }

private:
    CycCtxPtr ctx_;
    int nvars_ = 0;
    std::map<Exps, Cyc> terms_;
};

// Deterministic (lex-sorted) list of all exponent vectors of total degree d.
inline std::vector<Exps> monomials_of_degree(int nvars, int d) {
    std::vector<Exps> out;
    Exps cur(static_cast<size_t>(nvars), 0);
    // Recursive enumeration in increasing lex order.
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur[static_cast<size_t>(var)] = rem;
            out.push_back(cur);
            cur[static_cast<size_t>(var)] = 0;
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[static_cast<size_t>(var)] = e;
            self(self, var + 1, rem - e);
        }
        cur[static_cast<size_t>(var)] = 0;
    };
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, d);
    return out;
}

}  // namespace dunkl
