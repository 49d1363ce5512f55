#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include "dunkl/rational.hpp"

namespace dunkl {

// Shared data for arithmetic in Q(zeta_N): the cyclotomic polynomial
// Phi_N, the reduction table for powers zeta^j with j >= phi(N), and the
// full table of reduced powers zeta^0..zeta^{N-1} (used by conjugation).
class CycContext {
public:
    explicit CycContext(int conductor) : N_(conductor) {
        if (conductor < 1) throw error("conductor must be positive");
        phi_poly_ = cyclotomic_poly(conductor);
        phi_ = static_cast<int>(phi_poly_.size()) - 1;
        build_tables();
    }

    int conductor() const { return N_; }
    int degree() const { return phi_; }

    // zeta^e as a coefficient vector of length phi(N), e taken mod N.
    const std::vector<Rat>& zeta_power(long e) const {
        long m = e % N_;
        if (m < 0) m += N_;
        return zeta_pow_[static_cast<size_t>(m)];
    }

    // Reduces a coefficient vector of arbitrary length modulo Phi_N.
    std::vector<Rat> reduce(const std::vector<Rat>& raw) const {
        std::vector<Rat> out(static_cast<size_t>(phi_), Rat(0));
        for (size_t j = 0; j < raw.size(); ++j) {
            if (raw[j] == 0) continue;
            if (static_cast<int>(j) < phi_) {
                out[j] += raw[j];
            } else {
                const auto& row = high_pow_.at(j);
                for (int t = 0; t < phi_; ++t) out[t] += raw[j] * row[t];
            }
        }
        return out;
    }

private:
    // Phi_N via Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, exact
    // division over the integers.
    static std::vector<Rat> cyclotomic_poly(int n) {
        std::vector<Rat> num(static_cast<size_t>(n) + 1, Rat(0));
        num[0] = Rat(-1);
        num[static_cast<size_t>(n)] = Rat(1);
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            auto phi_d = cyclotomic_poly(d);
            num = poly_div_exact(num, phi_d);
        }
        return num;
    }

    static std::vector<Rat> poly_div_exact(std::vector<Rat> num, const std::vector<Rat>& den) {
        int dn = static_cast<int>(num.size()) - 1;
        int dd = static_cast<int>(den.size()) - 1;
        std::vector<Rat> q(static_cast<size_t>(dn - dd) + 1, Rat(0));
        for (int i = dn; i >= dd; --i) {
            Rat c = num[static_cast<size_t>(i)] / den.back();
            q[static_cast<size_t>(i - dd)] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j)
                num[static_cast<size_t>(i - dd + j)] -= c * den[static_cast<size_t>(j)];
        }
        for (const auto& r : num)
            if (r != 0) throw error("cyclotomic polynomial division is not exact");
        return q;
    }

    void build_tables() {
        // x^e mod Phi_N for e in [phi, 2*phi - 2] (enough for products) and,
        // continuing the recursion, for all e < N (for zeta_power).
        size_t top = std::max<size_t>(static_cast<size_t>(2 * phi_), static_cast<size_t>(N_));
        std::vector<std::vector<Rat>> pow(top + 1);
        for (int j = 0; j < phi_ && static_cast<size_t>(j) <= top; ++j) {
            pow[static_cast<size_t>(j)].assign(static_cast<size_t>(phi_), Rat(0));
            pow[static_cast<size_t>(j)][static_cast<size_t>(j)] = Rat(1);
        }
        for (size_t e = static_cast<size_t>(phi_); e <= top; ++e) {
            // x^e = x * x^{e-1}, then fold the overflow term via Phi_N.
            const auto& prev = pow[e - 1];
            std::vector<Rat> cur(static_cast<size_t>(phi_), Rat(0));
            Rat carry = prev[static_cast<size_t>(phi_ - 1)];
            for (int t = phi_ - 1; t > 0; --t) cur[static_cast<size_t>(t)] = prev[static_cast<size_t>(t - 1)];
            cur[0] = Rat(0);
            if (carry != 0) {
                // x^phi = -(Phi_N - x^phi), Phi_N monic.
                for (int t = 0; t < phi_; ++t) cur[static_cast<size_t>(t)] -= carry * phi_poly_[static_cast<size_t>(t)];
            }
            pow[e] = std::move(cur);
            if (e >= static_cast<size_t>(phi_)) high_pow_[e] = pow[e];
        }
        zeta_pow_.resize(static_cast<size_t>(N_));
        for (int e = 0; e < N_; ++e) zeta_pow_[static_cast<size_t>(e)] = pow[static_cast<size_t>(e)];
    }

    int N_;
    int phi_;
    std::vector<Rat> phi_poly_;
    std::map<size_t, std::vector<Rat>> high_pow_;
    std::vector<std::vector<Rat>> zeta_pow_;
};

using CycCtxPtr = std::shared_ptr<const CycContext>;

inline CycCtxPtr make_cyc_context(int conductor) {
    return std::make_shared<CycContext>(conductor);
}

// Element of Q(zeta_N) in the power basis {1, zeta, ..., zeta^{phi(N)-1}}
// reduced modulo Phi_N. The representation is canonical: equal field
// elements have equal coefficient vectors.
class Cyc {
public:
    Cyc() = default;
    Cyc(CycCtxPtr ctx, std::vector<Rat> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != ctx_->degree()) throw error("bad coefficient length");
    }
    static Cyc zero(const CycCtxPtr& ctx) {
        return Cyc(ctx, std::vector<Rat>(static_cast<size_t>(ctx->degree()), Rat(0)));
    }
    static Cyc from_rat(const CycCtxPtr& ctx, const Rat& r) {
        auto v = std::vector<Rat>(static_cast<size_t>(ctx->degree()), Rat(0));
        v[0] = r;
        return Cyc(ctx, std::move(v));
    }
    static Cyc from_int(const CycCtxPtr& ctx, long n) { return from_rat(ctx, Rat(n)); }
    // zeta_N^e
    static Cyc zeta(const CycCtxPtr& ctx, long e = 1) { return Cyc(ctx, ctx->zeta_power(e)); }
    // Primitive root of unity of order d (requires d | N).
    static Cyc root_of_unity(const CycCtxPtr& ctx, int d) {
        if (ctx->conductor() % d != 0) throw error("order does not divide the conductor");
        return zeta(ctx, ctx->conductor() / d);
    }

    const CycCtxPtr& context() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
    }
    bool is_rational() const {
        for (size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }
    Rat rat_value() const {
        if (!is_rational()) throw error("not a rational number");
        return c_.empty() ? Rat(0) : c_[0];
    }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }
    friend bool operator<(const Cyc& a, const Cyc& b) {
        a.check(b);
        return a.c_ < b.c_;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        a.check(b);
        auto v = a.c_;
        for (size_t j = 0; j < v.size(); ++j) v[j] += b.c_[j];
        return Cyc(a.ctx_, std::move(v));
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        a.check(b);
        auto v = a.c_;
        for (size_t j = 0; j < v.size(); ++j) v[j] -= b.c_[j];
        return Cyc(a.ctx_, std::move(v));
    }
    friend Cyc operator-(const Cyc& a) {
        auto v = a.c_;
        for (auto& r : v) r = -r;
        return Cyc(a.ctx_, std::move(v));
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        a.check(b);
        size_t n = a.c_.size();
        std::vector<Rat> raw(2 * n, Rat(0));
        for (size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b.c_[j] == 0) continue;
                raw[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Cyc(a.ctx_, a.ctx_->reduce(raw));
    }
    friend Cyc operator*(const Cyc& a, const Rat& r) {
        auto v = a.c_;
        for (auto& x : v) x *= r;
        return Cyc(a.ctx_, std::move(v));
    }
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

    // Multiplicative inverse via a linear solve against the
    // multiplication-by-*this matrix in the power basis.
    Cyc inverse() const {
        if (is_zero()) throw division_by_zero();
        int n = ctx_->degree();
        if (is_rational()) {
            return from_rat(ctx_, Rat(1) / c_[0]);
        }
        // Columns: this * zeta^j.  Solve M x = e_0.
        std::vector<std::vector<Rat>> m(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n) + 1, Rat(0)));
        for (int j = 0; j < n; ++j) {
            Cyc col = *this * Cyc(ctx_, ctx_->zeta_power(j));
            for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.c_[static_cast<size_t>(i)];
        }
        m[0][static_cast<size_t>(n)] = Rat(1);
        // Gaussian elimination with partial (first nonzero) pivoting.
        int row = 0;
        std::vector<int> pivot_col(static_cast<size_t>(n), -1);
        for (int col = 0; col < n && row < n; ++col) {
            int pr = -1;
            for (int r = row; r < n; ++r)
                if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(pr)]);
            Rat p = m[static_cast<size_t>(row)][static_cast<size_t>(col)];
            for (int c = col; c <= n; ++c) m[static_cast<size_t>(row)][static_cast<size_t>(c)] /= p;
            for (int r = 0; r < n; ++r) {
                if (r == row) continue;
                Rat f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int c = col; c <= n; ++c)
                    m[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * m[static_cast<size_t>(row)][static_cast<size_t>(c)];
            }
            pivot_col[static_cast<size_t>(row)] = col;
            ++row;
        }
        std::vector<Rat> x(static_cast<size_t>(n), Rat(0));
        for (int r = 0; r < row; ++r)
            x[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = m[static_cast<size_t>(r)][static_cast<size_t>(n)];
        Cyc inv(ctx_, std::move(x));
        if (!(*this * inv == from_int(ctx_, 1))) throw error("inverse computation failed");
        return inv;
    }

    // Complex conjugation: zeta^j -> zeta^{N-j}, re-reduced.
    Cyc conj() const {
        Cyc out = zero(ctx_);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            out += Cyc(ctx_, ctx_->zeta_power(ctx_->conductor() - static_cast<long>(j))) * c_[j];
        }
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!first) os << (c_[j] > 0 ? " + " : " - ");
            Rat a = (!first && c_[j] < 0) ? Rat(-c_[j]) : c_[j];
            first = false;
            if (j == 0) {
                os << a.str();
            } else {
                if (a != 1) os << a.str() << "*";
                os << "z" << ctx_->conductor();
                if (j > 1) os << "^" << j;
            }
        }
        return os.str();
    }

private:
    void check(const Cyc& o) const {
        if (ctx_->conductor() != o.ctx_->conductor()) throw conductor_mismatch();
    }
    CycCtxPtr ctx_;
    std::vector<Rat> c_;
};

}  // namespace dunkl
