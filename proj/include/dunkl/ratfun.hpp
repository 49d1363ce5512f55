#pragma once

#include "dunkl/polyops.hpp"

namespace dunkl {

// Rational function num / prod_H alpha_H^{m_H} with denominator supported
// on the arrangement. Kept reduced: alpha_H does not divide num whenever
// m_H > 0, which makes equality plain component comparison.
class RatFun {
public:
    RatFun() = default;
    RatFun(const ReflectionGroup& g, MPoly num, std::map<int, int> den = {})
        : num_(std::move(num)), den_(std::move(den)) {
        reduce(g);
    }

    static RatFun zero(const ReflectionGroup& g) {
        return RatFun(g, MPoly::zero(g.context(), g.dim()));
    }
    static RatFun from_poly(const ReflectionGroup& g, MPoly p) { return RatFun(g, std::move(p)); }
    // alpha_H^{-m}
    static RatFun alpha_inverse(const ReflectionGroup& g, int h, int m = 1) {
        return RatFun(g, MPoly::one(g.context(), g.dim()), {{h, m}});
    }

    const MPoly& num() const { return num_; }
    const std::map<int, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }

    const MPoly& as_poly() const {
        if (!den_.empty()) throw error("rational function has a nontrivial denominator");
        return num_;
    }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    // Degree of a homogeneous rational function (num degree minus den degree).
    int homogeneous_degree() const {
        int d = num_.total_degree();
        for (const auto& [h, m] : den_) d -= m;
        return d;
    }

    std::string str(const ReflectionGroup& g) const {
        if (den_.empty()) return num_.str();
        std::ostringstream os;
        os << "(" << num_.str() << ") / (";
        bool first = true;
        for (const auto& [h, m] : den_) {
            if (!first) os << "*";
            first = false;
            os << "(" << g.hyperplanes()[static_cast<size_t>(h)].alpha_form.str() << ")";
            if (m > 1) os << "^" << m;
        }
        os << ")";
        return os.str();
    }

    friend RatFun rf_add(const ReflectionGroup& g, const RatFun& a, const RatFun& b) {
        // Common denominator: pointwise max of exponents.
        std::map<int, int> den = a.den_;
        for (const auto& [h, m] : b.den_) {
            auto it = den.find(h);
            if (it == den.end())
                den.emplace(h, m);
            else
                it->second = std::max(it->second, m);
        }
        MPoly num = a.scaled_to(g, den) + b.scaled_to(g, den);
        return RatFun(g, std::move(num), std::move(den));
    }
    friend RatFun rf_sub(const ReflectionGroup& g, const RatFun& a, const RatFun& b) {
        return rf_add(g, a, rf_neg(b));
    }
    friend RatFun rf_neg(const RatFun& a) {
        RatFun out = a;
        out.num_ = -out.num_;
        return out;
    }
    friend RatFun rf_mul(const ReflectionGroup& g, const RatFun& a, const RatFun& b) {
        std::map<int, int> den = a.den_;
        for (const auto& [h, m] : b.den_) den[h] += m;
        return RatFun(g, a.num_ * b.num_, std::move(den));
    }
    friend RatFun rf_scale(const ReflectionGroup& g, const RatFun& a, const Cyc& c) {
        return RatFun(g, a.num_ * c, a.den_);
    }

    friend RatFun rf_derivative(const ReflectionGroup& g, const RatFun& a, int var) {
        // d(num * prod alpha^{-m}) = num' * prod alpha^{-m}
        //                          - num * sum_h m_h alpha_h' * alpha_h^{-m_h-1} ...
        MPoly num = a.num_.derivative(var);
        for (const auto& [h, m] : a.den_)
            num *= g.hyperplanes()[static_cast<size_t>(h)].alpha_form;
        for (const auto& [h, m] : a.den_) {
            const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
            MPoly term = a.num_ * hp.alpha_form.derivative(var) * Cyc::from_int(g.context(), m);
            for (const auto& [h2, m2] : a.den_) {
                if (h2 == h) continue;
                term *= g.hyperplanes()[static_cast<size_t>(h2)].alpha_form;
            }
            num -= term;
        }
        std::map<int, int> den = a.den_;
        for (auto& [h, m] : den) ++m;
        return RatFun(g, std::move(num), std::move(den));
    }

    // (w.f): numerator transforms by the group action; each alpha_H in the
    // denominator maps to scalar * alpha_{wH}.
    friend RatFun rf_act(const ReflectionGroup& g, int w, const RatFun& a) {
        MPoly num = g.act(w, a.num_);
        std::map<int, int> den;
        for (const auto& [h, m] : a.den_) {
            auto [h2, scalar] = g.hyperplane_image(w, h);
            den[h2] += m;
            Cyc inv = scalar.inverse();
            for (int t = 0; t < m; ++t) num = num * inv;
        }
        return RatFun(g, std::move(num), std::move(den));
    }

private:
    // Numerator after extending this fraction to the given common denominator.
    MPoly scaled_to(const ReflectionGroup& g, const std::map<int, int>& den) const {
        MPoly num = num_;
        for (const auto& [h, m] : den) {
            auto it = den_.find(h);
            int extra = m - (it == den_.end() ? 0 : it->second);
            for (int t = 0; t < extra; ++t)
                num *= g.hyperplanes()[static_cast<size_t>(h)].alpha_form;
        }
        return num;
    }

    void reduce(const ReflectionGroup& g) {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            if (it->second == 0) {
                it = den_.erase(it);
                continue;
            }
            const Vec& alpha = g.hyperplanes()[static_cast<size_t>(it->first)].alpha;
            int ord = ord_along(alpha, num_);
            int cancel = std::min(ord, it->second);
            if (cancel > 0) {
                num_ = exact_divide(alpha, num_, cancel);
                it->second -= cancel;
            }
            if (it->second == 0)
                it = den_.erase(it);
            else
                ++it;
        }
    }

    MPoly num_;
    std::map<int, int> den_;
};

}  // namespace dunkl
