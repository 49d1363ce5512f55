#pragma once

#include "dunkl/diffop.hpp"

namespace dunkl {

// Polynomial differential form: map from a strictly increasing wedge index
// tuple (dx_{i_1} ^ ... ^ dx_{i_l}) to its polynomial coefficient.
class KForm {
public:
    using Tuple = std::vector<int>;

    KForm() = default;
    KForm(CycCtxPtr ctx, int nvars) : ctx_(std::move(ctx)), nvars_(nvars) {}

    static KForm zero(const CycCtxPtr& ctx, int nvars) { return KForm(ctx, nvars); }
    static KForm from_poly(const MPoly& p) {
        KForm f(p.context(), p.nvars());
        f.add({}, p);
        return f;
    }
    static KForm monomial_form(const MPoly& p, Tuple t) {
        KForm f(p.context(), p.nvars());
        f.add(std::move(t), p);
        return f;
    }

    const CycCtxPtr& context() const { return ctx_; }
    int nvars() const { return nvars_; }
    const std::map<Tuple, MPoly>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    bool operator==(const KForm& o) const { return comps_ == o.comps_; }

    void add(const Tuple& t, const MPoly& p) {
        if (p.is_zero()) return;
        auto it = comps_.find(t);
        if (it == comps_.end()) {
            comps_.emplace(t, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    // Adds p * dx_i ^ dx_t, normalizing the wedge order and sign; a repeated
    // index contributes zero.
    void add_wedge(int i, const Tuple& t, const MPoly& p) {
        if (p.is_zero()) return;
        Tuple out;
        out.reserve(t.size() + 1);
        int sign = 1;
        bool placed = false;
        for (int idx : t) {
            if (idx == i) return;
            if (!placed && idx > i) {
                out.push_back(i);
                placed = true;
            }
            if (!placed) sign = -sign;
            out.push_back(idx);
        }
        if (!placed) out.push_back(i);
        add(out, sign > 0 ? p : -p);
    }

    friend KForm operator+(const KForm& a, const KForm& b) {
        KForm out = a;
        for (const auto& [t, p] : b.comps_) out.add(t, p);
        return out;
    }
    friend KForm operator-(const KForm& a, const KForm& b) {
        KForm out = a;
        for (const auto& [t, p] : b.comps_) out.add(t, -p);
        return out;
    }
    friend KForm operator*(const KForm& a, const Cyc& c) {
        KForm out(a.ctx_, a.nvars_);
        for (const auto& [t, p] : a.comps_) out.add(t, p * c);
        return out;
    }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [t, p] : comps_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << p.str() << ")";
            for (int i : t) os << "*dx" << (i + 1);
        }
        return os.str();
    }

private:
    CycCtxPtr ctx_;
    int nvars_ = 0;
    std::map<Tuple, MPoly> comps_;
};

// Diagonal group action: polynomial coefficients via the function action,
// wedge factors via the same linear substitution as the coordinates
// (dx_i and x_i both live in V*).
inline KForm kform_act(const ReflectionGroup& g, int w, const KForm& f) {
    if (w == 0) return f;
    const Mat& minv = g.elements()[static_cast<size_t>(g.inv(w))].matrix;
    KForm out(f.context(), f.nvars());
    for (const auto& [t, p] : f.components()) {
        MPoly moved = g.act(w, p);
        // Expand wedge of the transformed one-forms, one factor at a time.
        std::map<KForm::Tuple, Cyc> frontier = {{KForm::Tuple{}, Cyc::from_int(g.context(), 1)}};
        for (size_t pos = t.size(); pos-- > 0;) {
            std::map<KForm::Tuple, Cyc> next;
            int i = t[pos];
            for (int j = 0; j < g.dim(); ++j) {
                const Cyc& c = minv[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (c.is_zero()) continue;
                for (const auto& [tail, coeff] : frontier) {
                    // dx_j ^ tail
                    KForm::Tuple merged;
                    merged.reserve(tail.size() + 1);
                    int sign = 1;
                    bool skip = false, placed = false;
                    for (int idx : tail) {
                        if (idx == j) skip = true;
                        if (!placed && idx > j) {
                            merged.push_back(j);
                            placed = true;
                        }
                        if (!placed) sign = -sign;
                        merged.push_back(idx);
                    }
                    if (skip) continue;
                    if (!placed) merged.push_back(j);
                    Cyc add = coeff * c;
                    if (sign < 0) add = -add;
                    auto it = next.find(merged);
                    if (it == next.end()) {
                        next.emplace(std::move(merged), add);
                    } else {
                        it->second += add;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
            frontier = std::move(next);
        }
        for (const auto& [tuple, coeff] : frontier) out.add(tuple, moved * coeff);
    }
    return out;
}

inline KForm group_algebra_act_form(const ReflectionGroup& g, const GroupAlgebraElement& a,
                                    const KForm& f) {
    KForm out(f.context(), f.nvars());
    for (const auto& [w, c] : a.coeffs()) out = out + kform_act(g, w, f) * c;
    return out;
}

// Deformed differential d(k) = d + Omega(k), where Omega(k) multiplies each
// polynomial coefficient p by sum_H (a_H(k)(p)/alpha_H) dalpha_H. The
// quotient is exact because nontrivial isotypic components vanish on H.
inline KForm deformed_d(const ReflectionGroup& g, const Multiplicity& k, const KForm& f) {
    KForm out(f.context(), f.nvars());
    for (const auto& [t, p] : f.components()) {
        for (int i = 0; i < g.dim(); ++i) out.add_wedge(i, t, p.derivative(i));
        for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
            MPoly img = hyperplane_weight(g, k, static_cast<int>(h)).apply(g, p);
            if (img.is_zero()) continue;
            MPoly q = exact_divide(g.hyperplanes()[h].alpha, img);
            const Vec& alpha = g.hyperplanes()[h].alpha;
            for (int i = 0; i < g.dim(); ++i) {
                if (alpha[static_cast<size_t>(i)].is_zero()) continue;
                out.add_wedge(i, t, q * alpha[static_cast<size_t>(i)]);
            }
        }
    }
    return out;
}

// Koszul differential: p dx_{i_1..i_l} -> sum_t (-1)^{t-1} x_{i_t} p dx_{..^t..}.
inline KForm koszul(const KForm& f) {
    KForm out(f.context(), f.nvars());
    for (const auto& [t, p] : f.components()) {
        int sign = 1;
        for (size_t pos = 0; pos < t.size(); ++pos) {
            KForm::Tuple rest;
            for (size_t u = 0; u < t.size(); ++u)
                if (u != pos) rest.push_back(t[u]);
            MPoly xp = p * MPoly::variable(f.context(), f.nvars(), t[pos]);
            out.add(rest, sign > 0 ? xp : -xp);
            sign = -sign;
        }
    }
    return out;
}

// Deformed Euler operator E(k) = E(0) + sum_H a_H(k), with E(0) acting by
// l + m on a form of wedge degree l with homogeneous polynomial degree m,
// and a_H(k) acting diagonally.
inline KForm deformed_euler(const ReflectionGroup& g, const Multiplicity& k, const KForm& f) {
    KForm out(f.context(), f.nvars());
    for (const auto& [t, p] : f.components()) {
        int l = static_cast<int>(t.size());
        for (const auto& [e, c] : p.terms()) {
            MPoly mono = MPoly::monomial(f.context(), e, c);
            out.add(t, mono * Cyc::from_int(g.context(), l + exps_degree(e)));
        }
    }
    GroupAlgebraElement total(g.context());
    for (size_t h = 0; h < g.hyperplanes().size(); ++h)
        total = total + hyperplane_weight(g, k, static_cast<int>(h));
    return out + group_algebra_act_form(g, total, f);
}

inline CheckReport check_homotopy(const ReflectionGroup& g, const Multiplicity& k, int bound) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    std::vector<KForm::Tuple> tuples_by_l[1 + 16];
    for (int mask = 0; mask < (1 << n); ++mask) {
        KForm::Tuple t;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) t.push_back(i);
        tuples_by_l[t.size()].push_back(t);
    }
    for (int l = 0; l <= n; ++l) {
        for (int m = 0; l + m <= bound; ++m) {
            for (const auto& t : tuples_by_l[l]) {
                for (const auto& e : monomials_of_degree(n, m)) {
                    KForm w = KForm::monomial_form(MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1)), t);
                    KForm lhs = deformed_euler(g, k, w);
                    KForm rhs = koszul(deformed_d(g, k, w)) + deformed_d(g, k, koszul(w));
                    if (!(lhs == rhs))
                        return {false, "homotopy identity fails on " + w.str()};
                }
            }
        }
    }
    return {true, ""};
}

inline CheckReport check_d_squared(const ReflectionGroup& g, const Multiplicity& k, int bound) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    // K^0 cross-check: d(k)^2 f must match the pairwise Dunkl commutators.
    for (int m = 0; m <= bound; ++m) {
        for (const auto& e : monomials_of_degree(n, m)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            KForm dd = deformed_d(g, k, deformed_d(g, k, KForm::from_poly(f)));
            KForm expect(ctx, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Vec ei = coordinate_vector(ctx, n, i), ej = coordinate_vector(ctx, n, j);
                    MPoly comm = dunkl_apply(g, k, ei, dunkl_apply(g, k, ej, f)) -
                                 dunkl_apply(g, k, ej, dunkl_apply(g, k, ei, f));
                    expect.add({i, j}, comm);
                }
            if (!(dd == expect))
                return {false, "d(k)^2 on " + f.str() + " disagrees with the Dunkl commutators"};
            if (!dd.is_zero()) return {false, "d(k)^2 nonzero on " + f.str()};
        }
    }
    // Higher wedge degrees.
    for (int mask = 1; mask < (1 << n); ++mask) {
        KForm::Tuple t;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) t.push_back(i);
        for (int m = 0; static_cast<int>(t.size()) + m <= bound; ++m)
            for (const auto& e : monomials_of_degree(n, m)) {
                KForm w = KForm::monomial_form(MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1)), t);
                if (!deformed_d(g, k, deformed_d(g, k, w)).is_zero())
                    return {false, "d(k)^2 nonzero on " + w.str()};
            }
    }
    return {true, ""};
}

// The degree-preserving intertwiner S(k) with d(k) S = S d(0), S = identity
// in degree 0, acting on the polynomial factor only. Stored as one matrix
// per polynomial degree over the monomial basis.
class Intertwiner {
public:
    Intertwiner(const ReflectionGroup& g, const Multiplicity& k, int bound) : g_(&g) {
        // Hypothesis: no eigenvalue c of z(k) on the regular representation
        // has -c a positive integer (else degree |c| becomes unsolvable).
        for (const auto& [lambda, mult] : central_spectrum(g, k)) {
            if (!lambda.is_rational()) continue;
            Rat r = lambda.rat_value();
            if (r < 0 && is_integer(r)) throw singular_parameter(lambda.str());
        }
        const CycCtxPtr& ctx = g.context();
        int n = g.dim();
        mats_.push_back(identity_matrix(ctx, 1));  // degree 0
        for (int m = 1; m <= bound; ++m) {
            auto mons = monomials_of_degree(n, m);
            auto mons_low = monomials_of_degree(n, m - 1);
            size_t dim = mons.size(), dim_low = mons_low.size();
            Mat sm(dim, Vec(dim, Cyc::zero(ctx)));
            for (size_t col = 0; col < dim; ++col) {
                MPoly p = MPoly::monomial(ctx, mons[col], Cyc::from_int(ctx, 1));
                // rhs: sum_i S_{m-1}(d_i p) dx_i.
                KForm rhs(ctx, n);
                for (int i = 0; i < n; ++i)
                    rhs.add({i}, apply_degree(m - 1, p.derivative(i)));
                // Solve d(k) q = rhs for q in degree m.
                Mat sys(static_cast<size_t>(n) * dim_low, Vec(dim, Cyc::zero(ctx)));
                Vec b(static_cast<size_t>(n) * dim_low, Cyc::zero(ctx));
                for (size_t qc = 0; qc < dim; ++qc) {
                    KForm img = deformed_d(g, k, KForm::from_poly(
                                                     MPoly::monomial(ctx, mons[qc], Cyc::from_int(ctx, 1))));
                    for (const auto& [t, poly] : img.components())
                        for (size_t r = 0; r < dim_low; ++r)
                            sys[static_cast<size_t>(t[0]) * dim_low + r][qc] = poly.coeff(mons_low[r]);
                }
                for (const auto& [t, poly] : rhs.components())
                    for (size_t r = 0; r < dim_low; ++r)
                        b[static_cast<size_t>(t[0]) * dim_low + r] = poly.coeff(mons_low[r]);
                Mat rank_probe = sys;
                if (mat_rank(std::move(rank_probe)) != static_cast<int>(dim))
                    throw error("intertwiner solve is not unique at degree " + std::to_string(m));
                auto sol = solve_linear(std::move(sys), std::move(b), ctx);
                if (!sol) throw error("intertwiner equation has no solution at degree " +
                                      std::to_string(m));
                for (size_t r = 0; r < dim; ++r) sm[r][col] = (*sol)[r];
            }
            if (mat_rank(sm) != static_cast<int>(dim))
                throw error("intertwiner is singular at degree " + std::to_string(m));
            mats_.push_back(std::move(sm));
        }
    }

    int bound() const { return static_cast<int>(mats_.size()) - 1; }
    const Mat& matrix(int degree) const { return mats_[static_cast<size_t>(degree)]; }

    // S applied to a homogeneous polynomial of the given degree.
    MPoly apply_degree(int degree, const MPoly& p) const {
        const CycCtxPtr& ctx = g_->context();
        auto mons = monomials_of_degree(g_->dim(), degree);
        const Mat& sm = mats_[static_cast<size_t>(degree)];
        MPoly out(ctx, g_->dim());
        for (size_t col = 0; col < mons.size(); ++col) {
            Cyc c = p.coeff(mons[col]);
            if (c.is_zero()) continue;
            for (size_t r = 0; r < mons.size(); ++r) out.add_term(mons[r], sm[r][col] * c);
        }
        return out;
    }

    MPoly apply_poly(const MPoly& p) const {
        MPoly out(g_->context(), g_->dim());
        for (int d = 0; d <= p.total_degree(); ++d) {
            MPoly part = p.homogeneous_part(d);
            if (!part.is_zero()) out += apply_degree(d, part);
        }
        return out;
    }

    // Extension to forms via S(p (x) w) = S(p) (x) w.
    KForm apply_form(const KForm& f) const {
        KForm out(f.context(), f.nvars());
        for (const auto& [t, p] : f.components()) out.add(t, apply_poly(p));
        return out;
    }

private:
    const ReflectionGroup* g_;
    std::vector<Mat> mats_;
};

inline CheckReport check_intertwiner(const ReflectionGroup& g, const Multiplicity& k, int bound) {
    Intertwiner s(g, k, bound);
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    Multiplicity k0 = Multiplicity::zero(g);
    if (!(s.apply_form(KForm::from_poly(MPoly::one(ctx, n))) ==
          KForm::from_poly(MPoly::one(ctx, n))))
        return {false, "S is not the identity on constants"};
    for (int mask = 0; mask < (1 << n); ++mask) {
        KForm::Tuple t;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) t.push_back(i);
        for (int m = 0; static_cast<int>(t.size()) + m <= bound && m <= s.bound(); ++m) {
            for (const auto& e : monomials_of_degree(n, m)) {
                KForm w = KForm::monomial_form(MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1)), t);
                KForm lhs = deformed_d(g, k, s.apply_form(w));
                KForm rhs = s.apply_form(deformed_d(g, k0, w));
                if (!(lhs == rhs)) return {false, "d(k) S != S d(0) on " + w.str()};
            }
        }
    }
    // W-invariance of S on the polynomial factor.
    for (int m = 1; m <= s.bound(); ++m)
        for (const auto& e : monomials_of_degree(n, m)) {
            MPoly p = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            for (int w : g.generator_indices())
                if (!(s.apply_degree(m, g.act(w, p)) == g.act(w, s.apply_degree(m, p))))
                    return {false, "S does not commute with the group action"};
        }
    return {true, ""};
}

}  // namespace dunkl
