#pragma once

#include "dunkl/ratfun.hpp"

namespace dunkl {

// Monomial layer of a differential operator without group part:
// exponent vector of partial derivatives -> rational-function coefficient.
using DTerms = std::map<Exps, RatFun>;

namespace detail {

inline void dterms_accumulate(const ReflectionGroup& g, DTerms& t, const Exps& e, const RatFun& c) {
    if (c.is_zero()) return;
    auto it = t.find(e);
    if (it == t.end()) {
        t.emplace(e, c);
    } else {
        it->second = rf_add(g, it->second, c);
        if (it->second.is_zero()) t.erase(it);
    }
}

// Left-multiply sum_e c_e d^e by the single derivative d_i:
// d_i (c d^e) = (d_i c) d^e + c d^{e + e_i}.
inline DTerms left_mul_deriv(const ReflectionGroup& g, const DTerms& t, int i) {
    DTerms out;
    for (const auto& [e, c] : t) {
        dterms_accumulate(g, out, e, rf_derivative(g, c, i));
        Exps up = e;
        ++up[static_cast<size_t>(i)];
        dterms_accumulate(g, out, up, c);
    }
    return out;
}

}  // namespace detail

// Element of the crossed product of differential operators on the
// complement of the arrangement with the group: normal form is
// coefficient x derivative-monomial x group-element, group rightmost.
class DiffReflOp {
public:
    DiffReflOp() = default;

    // terms keyed by (group element, derivative exponents)
    using Key = std::pair<int, Exps>;

    static DiffReflOp zero() { return DiffReflOp(); }
    static DiffReflOp identity(const ReflectionGroup& g) {
        return from_ratfun(g, RatFun::from_poly(g, MPoly::one(g.context(), g.dim())));
    }
    static DiffReflOp from_ratfun(const ReflectionGroup& g, const RatFun& c) {
        DiffReflOp op;
        op.add(g, 0, Exps(static_cast<size_t>(g.dim()), 0), c);
        return op;
    }
    static DiffReflOp from_poly(const ReflectionGroup& g, const MPoly& p) {
        return from_ratfun(g, RatFun::from_poly(g, p));
    }
    // The derivative in direction xi (a constant-coefficient vector field).
    static DiffReflOp derivative(const ReflectionGroup& g, const Vec& xi) {
        DiffReflOp op;
        for (int i = 0; i < g.dim(); ++i) {
            if (xi[static_cast<size_t>(i)].is_zero()) continue;
            Exps e(static_cast<size_t>(g.dim()), 0);
            e[static_cast<size_t>(i)] = 1;
            op.add(g, 0, e,
                   RatFun::from_poly(g, MPoly::constant(g.context(), g.dim(), xi[static_cast<size_t>(i)])));
        }
        return op;
    }
    static DiffReflOp group_element(const ReflectionGroup& g, int w) {
        DiffReflOp op;
        op.add(g, w, Exps(static_cast<size_t>(g.dim()), 0),
               RatFun::from_poly(g, MPoly::one(g.context(), g.dim())));
        return op;
    }
    static DiffReflOp from_group_algebra(const ReflectionGroup& g, const GroupAlgebraElement& a,
                                         const RatFun& coeff) {
        DiffReflOp op;
        Exps none(static_cast<size_t>(g.dim()), 0);
        for (const auto& [w, c] : a.coeffs()) op.add(g, w, none, rf_scale(g, coeff, c));
        return op;
    }

    const std::map<Key, RatFun>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const DiffReflOp& o) const { return terms_ == o.terms_; }

    void add(const ReflectionGroup& g, int w, const Exps& e, const RatFun& c) {
        if (c.is_zero()) return;
        Key key{w, e};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
        } else {
            it->second = rf_add(g, it->second, c);
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::string str(const ReflectionGroup& g) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [key, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "[" << c.str(g) << "]";
            for (size_t i = 0; i < key.second.size(); ++i)
                for (int t = 0; t < key.second[i]; ++t) os << "*d" << (i + 1);
            if (key.first != 0) os << "*g" << key.first;
        }
        return os.str();
    }

private:
    std::map<Key, RatFun> terms_;
};

inline DiffReflOp op_add(const ReflectionGroup& g, const DiffReflOp& a, const DiffReflOp& b) {
    DiffReflOp out = a;
    for (const auto& [key, c] : b.terms()) out.add(g, key.first, key.second, c);
    return out;
}

inline DiffReflOp op_sub(const ReflectionGroup& g, const DiffReflOp& a, const DiffReflOp& b) {
    DiffReflOp out = a;
    for (const auto& [key, c] : b.terms()) out.add(g, key.first, key.second, rf_neg(c));
    return out;
}

inline DiffReflOp op_scale(const ReflectionGroup& g, const DiffReflOp& a, const Cyc& s) {
    DiffReflOp out;
    for (const auto& [key, c] : a.terms()) out.add(g, key.first, key.second, rf_scale(g, c, s));
    return out;
}

// Product in normal form. The rewriting rules are
//   w . c = (w.c) . w       (functions past group elements)
//   w . d_i = d_{w(e_i)} . w (derivatives past group elements)
//   d_i . c = c d_i + (d_i c) (Leibniz).
inline DiffReflOp op_mul(const ReflectionGroup& g, const DiffReflOp& a, const DiffReflOp& b) {
    DiffReflOp out;
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    for (const auto& [ka, ca] : a.terms()) {
        const auto& [wa, ea] = ka;
        // Conjugated derivative monomial w_a d^{e_b} w_a^{-1}, expanded as a
        // constant-coefficient polynomial in the d_j (via the MPoly engine).
        const Mat& mw = g.elements()[static_cast<size_t>(wa)].matrix;
        for (const auto& [kb, cb] : b.terms()) {
            const auto& [wb, eb] = kb;
            MPoly conj = MPoly::monomial(ctx, eb, Cyc::from_int(ctx, 1));
            if (wa != 0 && exps_degree(eb) > 0) {
                std::vector<MPoly> cols;
                cols.reserve(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) {
                    Vec col(static_cast<size_t>(n), Cyc::zero(ctx));
                    for (int j = 0; j < n; ++j)
                        col[static_cast<size_t>(j)] = mw[static_cast<size_t>(j)][static_cast<size_t>(i)];
                    cols.push_back(MPoly::linear_form(ctx, col));
                }
                conj = conj.substitute(cols);
            }
            RatFun moved = rf_act(g, wa, cb);
            DTerms layer;
            for (const auto& [u, d] : conj.terms())
                detail::dterms_accumulate(g, layer, u, rf_scale(g, moved, d));
            // Push d^{e_a} through from the left, one derivative at a time.
            for (int i = 0; i < n; ++i)
                for (int t = 0; t < ea[static_cast<size_t>(i)]; ++t)
                    layer = detail::left_mul_deriv(g, layer, i);
            int w = g.mul(wa, wb);
            for (const auto& [u, d] : layer) out.add(g, w, u, rf_mul(g, ca, d));
        }
    }
    return out;
}

inline RatFun op_apply(const ReflectionGroup& g, const DiffReflOp& op, const RatFun& f) {
    RatFun out = RatFun::zero(g);
    for (const auto& [key, c] : op.terms()) {
        RatFun v = rf_act(g, key.first, f);
        for (size_t i = 0; i < key.second.size(); ++i)
            for (int t = 0; t < key.second[i]; ++t) v = rf_derivative(g, v, static_cast<int>(i));
        out = rf_add(g, out, rf_mul(g, c, v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dunkl operators.

// T_xi(k) = d_xi - sum_H (alpha_H(xi)/alpha_H) sum_i n_H k_{H,i} e_{H,i}.
inline DiffReflOp dunkl_T(const ReflectionGroup& g, const Multiplicity& k, const Vec& xi) {
    DiffReflOp op = DiffReflOp::derivative(g, xi);
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        Cyc axi = g.alpha_of(static_cast<int>(h), xi);
        if (axi.is_zero()) continue;
        GroupAlgebraElement a = hyperplane_weight(g, k, static_cast<int>(h));
        RatFun coeff = rf_scale(g, RatFun::alpha_inverse(g, static_cast<int>(h)), -axi);
        op = op_add(g, op, DiffReflOp::from_group_algebra(g, a, coeff));
    }
    return op;
}

inline Vec coordinate_vector(const CycCtxPtr& ctx, int n, int i) {
    Vec v(static_cast<size_t>(n), Cyc::zero(ctx));
    v[static_cast<size_t>(i)] = Cyc::from_int(ctx, 1);
    return v;
}

// Exact polynomial path: T_xi(k) f for a polynomial f. The a_H(k)-image of
// f is divisible by alpha_H because the nontrivial isotypic components of
// f vanish on H.
inline MPoly dunkl_apply(const ReflectionGroup& g, const Multiplicity& k, const Vec& xi,
                         const MPoly& f) {
    MPoly out = MPoly::zero(g.context(), g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        const Cyc& c = xi[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        out += f.derivative(i) * c;
    }
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        Cyc axi = g.alpha_of(static_cast<int>(h), xi);
        if (axi.is_zero()) continue;
        MPoly img = hyperplane_weight(g, k, static_cast<int>(h)).apply(g, f);
        if (img.is_zero()) continue;
        out -= exact_divide(g.hyperplanes()[h].alpha, img) * axi;
    }
    return out;
}

// Coxeter-form operator nabla_xi(c) = d_xi + sum_H c_H (alpha_H(xi)/alpha_H) s_H.
inline DiffReflOp dunkl_nabla(const ReflectionGroup& g, const Multiplicity& c, const Vec& xi) {
    if (!g.is_coxeter()) throw not_coxeter();
    DiffReflOp op = DiffReflOp::derivative(g, xi);
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        Cyc axi = g.alpha_of(static_cast<int>(h), xi);
        if (axi.is_zero()) continue;
        Cyc ch = Cyc::from_rat(g.context(), c.at(g, static_cast<int>(h), 1));
        if (ch.is_zero()) continue;
        RatFun coeff = rf_scale(g, RatFun::alpha_inverse(g, static_cast<int>(h)), axi * ch);
        DiffReflOp refl = DiffReflOp::group_element(g, g.hyperplanes()[h].distinguished);
        op = op_add(g, op, op_mul(g, DiffReflOp::from_ratfun(g, coeff), refl));
    }
    return op;
}

// ---------------------------------------------------------------------------
// W-invariant differential operators (no group letters).

class CMOperator {
public:
    CMOperator() = default;

    static CMOperator zero() { return CMOperator(); }

    const DTerms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const CMOperator& o) const { return terms_ == o.terms_; }

    void add(const ReflectionGroup& g, const Exps& e, const RatFun& c) {
        detail::dterms_accumulate(g, terms_, e, c);
    }

    RatFun apply(const ReflectionGroup& g, const RatFun& f) const {
        RatFun out = RatFun::zero(g);
        for (const auto& [e, c] : terms_) {
            RatFun v = f;
            for (size_t i = 0; i < e.size(); ++i)
                for (int t = 0; t < e[i]; ++t) v = rf_derivative(g, v, static_cast<int>(i));
            out = rf_add(g, out, rf_mul(g, c, v));
        }
        return out;
    }

    std::string str(const ReflectionGroup& g) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "[" << c.str(g) << "]";
            for (size_t i = 0; i < e.size(); ++i)
                for (int t = 0; t < e[i]; ++t) os << "*d" << (i + 1);
        }
        return os.str();
    }

private:
    DTerms terms_;
};

inline CMOperator cm_add(const ReflectionGroup& g, const CMOperator& a, const CMOperator& b) {
    CMOperator out = a;
    for (const auto& [e, c] : b.terms()) out.add(g, e, c);
    return out;
}

inline CMOperator cm_sub(const ReflectionGroup& g, const CMOperator& a, const CMOperator& b) {
    CMOperator out = a;
    for (const auto& [e, c] : b.terms()) out.add(g, e, rf_neg(c));
    return out;
}

inline CMOperator cm_mul(const ReflectionGroup& g, const CMOperator& a, const CMOperator& b) {
    CMOperator out;
    for (const auto& [ea, ca] : a.terms()) {
        DTerms layer;
        for (const auto& [eb, cb] : b.terms()) detail::dterms_accumulate(g, layer, eb, cb);
        for (size_t i = 0; i < ea.size(); ++i)
            for (int t = 0; t < ea[i]; ++t) layer = detail::left_mul_deriv(g, layer, static_cast<int>(i));
        for (const auto& [e, c] : layer) out.add(g, e, rf_mul(g, ca, c));
    }
    return out;
}

inline CMOperator cm_commutator_ops(const ReflectionGroup& g, const CMOperator& a,
                                    const CMOperator& b) {
    return cm_sub(g, cm_mul(g, a, b), cm_mul(g, b, a));
}

// Restriction to invariants: verifies the operator commutes with the group
// (exactly, in normal form), then drops the group letters.
inline CMOperator restrict_invariant(const ReflectionGroup& g, const DiffReflOp& op) {
    for (int w : g.generator_indices()) {
        DiffReflOp gw = DiffReflOp::group_element(g, w);
        if (!(op_mul(g, gw, op) == op_mul(g, op, gw))) throw not_equivariant();
    }
    CMOperator out;
    for (const auto& [key, c] : op.terms()) out.add(g, key.second, c);
    return out;
}

// P(T) for P a polynomial in dual variables: substitute T_{e_i} for the
// i-th variable. The T's commute (verified separately), so the expansion
// order is immaterial.
inline DiffReflOp substitute_dunkl(const ReflectionGroup& g, const Multiplicity& k, const MPoly& p) {
    std::vector<DiffReflOp> t;
    for (int i = 0; i < g.dim(); ++i)
        t.push_back(dunkl_T(g, k, coordinate_vector(g.context(), g.dim(), i)));
    DiffReflOp out;
    for (const auto& [e, c] : p.terms()) {
        DiffReflOp term = op_scale(g, DiffReflOp::identity(g), c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int rep = 0; rep < e[i]; ++rep) term = op_mul(g, term, t[i]);
        out = op_add(g, out, term);
    }
    return out;
}

// L_P for invariant P; throws when P is not invariant.
inline CMOperator cm_operator(const ReflectionGroup& g, const Multiplicity& k, const MPoly& p) {
    if (!is_invariant(g, p)) throw not_invariant();
    return restrict_invariant(g, substitute_dunkl(g, k, p));
}

inline CMOperator cm_commutator(const ReflectionGroup& g, const Multiplicity& k, const MPoly& p,
                                const MPoly& q) {
    return cm_commutator_ops(g, cm_operator(g, k, p), cm_operator(g, k, q));
}

// ---------------------------------------------------------------------------
// Check reports.

struct CheckReport {
    bool pass = true;
    std::string witness;  // empty when pass
};

// [T_xi, T_eta] f = 0 for coordinate pairs and all monomials of degree <= D.
inline CheckReport check_commutativity(const ReflectionGroup& g, const Multiplicity& k, int D) {
    const CycCtxPtr& ctx = g.context();
    for (int d = 0; d <= D; ++d) {
        for (const auto& e : monomials_of_degree(g.dim(), d)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            std::vector<MPoly> tf;
            for (int i = 0; i < g.dim(); ++i)
                tf.push_back(dunkl_apply(g, k, coordinate_vector(ctx, g.dim(), i), f));
            for (int i = 0; i < g.dim(); ++i)
                for (int j = i + 1; j < g.dim(); ++j) {
                    MPoly lhs = dunkl_apply(g, k, coordinate_vector(ctx, g.dim(), i), tf[static_cast<size_t>(j)]);
                    MPoly rhs = dunkl_apply(g, k, coordinate_vector(ctx, g.dim(), j), tf[static_cast<size_t>(i)]);
                    if (!(lhs == rhs))
                        return {false, "commutator nonzero on " + f.str() + " pair (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"};
                }
        }
    }
    return {true, ""};
}

// w T_xi w^{-1} = T_{w(xi)} on monomials of degree <= D.
inline CheckReport check_equivariance(const ReflectionGroup& g, const Multiplicity& k, int D) {
    const CycCtxPtr& ctx = g.context();
    for (int d = 0; d <= D; ++d) {
        for (const auto& e : monomials_of_degree(g.dim(), d)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            for (int w = 0; w < g.order(); ++w) {
                for (int i = 0; i < g.dim(); ++i) {
                    Vec xi = coordinate_vector(ctx, g.dim(), i);
                    MPoly lhs = g.act(w, dunkl_apply(g, k, xi, g.act(g.inv(w), f)));
                    MPoly rhs = dunkl_apply(g, k, g.act_vector(w, xi), f);
                    if (!(lhs == rhs))
                        return {false, "equivariance fails on " + f.str() + " w=" + std::to_string(w) +
                                           " xi=e" + std::to_string(i + 1)};
                }
            }
        }
    }
    return {true, ""};
}

// The commutation relation between Dunkl operators and coordinate
// multiplications: [T_xi, x_l] = <xi, x_l>
//   + sum_H (alpha_H(xi) v_H[l] / alpha_H(v_H)) sum_i n_H (k_{H,i} - k_{H,i-1}) e_{H,i},
// checked as operators on polynomials of degree <= D. The difference index
// direction is forced by the action convention (w.f = f o w^{-1}): on the
// cyclic group, e_{H,i} projects onto the span of x^m with m = -i mod n_H,
// and [T, x] x^m = (1 + n(k_{-m} - k_{-m-1})) x^m.
inline CheckReport check_cherednik_relations(const ReflectionGroup& g, const Multiplicity& k, int D) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    // Precompute the group-algebra parts of the right-hand side per (l, j).
    std::vector<std::vector<GroupAlgebraElement>> rhs_ga(
        static_cast<size_t>(n), std::vector<GroupAlgebraElement>(static_cast<size_t>(n), GroupAlgebraElement(ctx)));
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        const auto& hp = g.hyperplanes()[h];
        GroupAlgebraElement sum(ctx);
        for (int i = 0; i < hp.order; ++i) {
            Rat diff = k.at(g, static_cast<int>(h), i) - k.at(g, static_cast<int>(h), i - 1);
            if (diff == 0) continue;
            sum = sum + idempotent(g, static_cast<int>(h), i) *
                            Cyc::from_rat(ctx, diff * Rat(hp.order));
        }
        if (sum.is_zero()) continue;
        Cyc denom = g.alpha_of(static_cast<int>(h), hp.v);
        for (int j = 0; j < n; ++j) {
            Cyc axi = hp.alpha[static_cast<size_t>(j)];  // alpha_H(e_j)
            if (axi.is_zero()) continue;
            for (int l = 0; l < n; ++l) {
                Cyc factor = axi * hp.v[static_cast<size_t>(l)] / denom;
                if (factor.is_zero()) continue;
                rhs_ga[static_cast<size_t>(l)][static_cast<size_t>(j)] =
                    rhs_ga[static_cast<size_t>(l)][static_cast<size_t>(j)] + sum * factor;
            }
        }
    }
    for (int d = 0; d <= D; ++d) {
        for (const auto& e : monomials_of_degree(n, d)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            for (int j = 0; j < n; ++j) {
                Vec xi = coordinate_vector(ctx, n, j);
                for (int l = 0; l < n; ++l) {
                    MPoly xl = MPoly::variable(ctx, n, l);
                    MPoly lhs = dunkl_apply(g, k, xi, xl * f) - xl * dunkl_apply(g, k, xi, f);
                    MPoly rhs = rhs_ga[static_cast<size_t>(l)][static_cast<size_t>(j)].apply(g, f);
                    if (j == l) rhs += f;
                    if (!(lhs == rhs))
                        return {false, "bracket relation fails on " + f.str() + " (xi=e" +
                                           std::to_string(j + 1) + ", x=x" + std::to_string(l + 1) + ")"};
                }
            }
        }
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Invariant symmetric bilinear form (for the Coxeter-form operators):
// a symmetric invertible B with w^T B w = B for all w.
inline Mat invariant_bilinear_form(const ReflectionGroup& g) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    // Unknowns: entries B_{ij}, i <= j.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) slots.emplace_back(i, j);
    auto entry = [&](const Vec& sol, int i, int j) {
        if (i > j) std::swap(i, j);
        for (size_t s = 0; s < slots.size(); ++s)
            if (slots[s] == std::make_pair(i, j)) return sol[s];
        return Cyc::zero(ctx);
    };
    Mat system;
    for (int widx : g.generator_indices()) {
        const Mat& w = g.elements()[static_cast<size_t>(widx)].matrix;
        // (w^T B w - B)_{ab} = sum_{ij} w_{ia} B_{ij} w_{jb} - B_{ab}
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Vec row(slots.size(), Cyc::zero(ctx));
                for (size_t s = 0; s < slots.size(); ++s) {
                    auto [i, j] = slots[s];
                    Cyc c = w[static_cast<size_t>(i)][static_cast<size_t>(a)] *
                            w[static_cast<size_t>(j)][static_cast<size_t>(b)];
                    if (i != j)
                        c += w[static_cast<size_t>(j)][static_cast<size_t>(a)] *
                             w[static_cast<size_t>(i)][static_cast<size_t>(b)];
                    if (i == a && j == b) c -= Cyc::from_int(ctx, 1);
                    row[s] = c;
                }
                system.push_back(std::move(row));
            }
    }
    auto basis = kernel_basis(std::move(system), static_cast<int>(slots.size()), ctx);
    if (basis.empty()) throw error("no invariant bilinear form");
    // Pick a deterministic invertible solution: scan basis vectors, then
    // partial sums.
    auto build = [&](const Vec& sol) {
        Mat b(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Cyc::zero(ctx)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] = entry(sol, i, j);
        return b;
    };
    for (const auto& sol : basis) {
        Mat b = build(sol);
        if (!mat_det(b).is_zero()) return b;
    }
    Vec acc(slots.size(), Cyc::zero(ctx));
    for (const auto& sol : basis) {
        for (size_t s = 0; s < slots.size(); ++s) acc[s] += sol[s];
        Mat b = build(acc);
        if (!mat_det(b).is_zero()) return b;
    }
    throw error("no invertible invariant bilinear form found");
}

// restrict(|nabla(c)|^2) compared against the Calogero-Moser form
//   Delta_B - sum_H c_H (c_H + 1) (alpha_H, alpha_H)_B / alpha_H(x)^2,
// where the contractions use an invariant bilinear form B:
// |nabla|^2 = sum_{ij} (B^{-1})_{ij} nabla_i nabla_j, Delta_B its c = 0 case,
// and (alpha, alpha)_B = alpha B^{-1} alpha^T.
inline CheckReport check_cm_identity(const ReflectionGroup& g, const Multiplicity& c) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    Mat b = invariant_bilinear_form(g);
    Mat binv = *mat_inverse(b);
    DiffReflOp total;
    std::vector<DiffReflOp> nabla;
    for (int i = 0; i < n; ++i) nabla.push_back(dunkl_nabla(g, c, coordinate_vector(ctx, n, i)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Cyc& w = binv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (w.is_zero()) continue;
            total = op_add(g, total, op_scale(g, op_mul(g, nabla[static_cast<size_t>(i)], nabla[static_cast<size_t>(j)]), w));
        }
    CMOperator lhs = restrict_invariant(g, total);
    CMOperator rhs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Cyc& w = binv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (w.is_zero()) continue;
            Exps e(static_cast<size_t>(n), 0);
            ++e[static_cast<size_t>(i)];
            ++e[static_cast<size_t>(j)];
            rhs.add(g, e, RatFun::from_poly(g, MPoly::constant(ctx, n, w)));
        }
    Exps none(static_cast<size_t>(n), 0);
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        const auto& hp = g.hyperplanes()[h];
        Rat ch = c.at(g, static_cast<int>(h), 1);
        if (ch == 0) continue;
        // (alpha, alpha)_B
        Cyc aa = Cyc::zero(ctx);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                aa += hp.alpha[static_cast<size_t>(i)] * binv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                      hp.alpha[static_cast<size_t>(j)];
        Cyc coeff = -Cyc::from_rat(ctx, ch * (ch + 1)) * aa;
        rhs.add(g, none, rf_scale(g, RatFun::alpha_inverse(g, static_cast<int>(h), 2), coeff));
    }
    if (lhs == rhs) return {true, ""};
    return {false, "restricted square differs from the potential form"};
}

// Probes the four candidate conjugation identities
//   delta^{s1 k} . nabla(s2 k) . delta^{-s1 k} = T(k)
// on monomials of degree <= D; returns one flag per candidate in the order
// (+,+), (+,-), (-,+), (-,-).
inline std::array<bool, 4> conjugation_probe(const ReflectionGroup& g, int kval, int D) {
    if (!g.is_coxeter()) throw not_coxeter();
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    Multiplicity kplus = Multiplicity::uniform(g, Rat(kval));
    Multiplicity kminus = Multiplicity::uniform(g, Rat(-kval));
    std::array<bool, 4> pass = {true, true, true, true};
    int nh = static_cast<int>(g.hyperplanes().size());
    auto delta_pow = [&](int p) {  // delta^p as a RatFun, p may be negative
        if (p >= 0) {
            MPoly d = MPoly::one(ctx, n);
            for (int h = 0; h < nh; ++h)
                d *= g.hyperplanes()[static_cast<size_t>(h)].alpha_form.pow(p);
            return RatFun::from_poly(g, d);
        }
        std::map<int, int> den;
        for (int h = 0; h < nh; ++h) den[h] = -p;
        return RatFun(g, MPoly::one(ctx, n), den);
    };
    std::vector<DiffReflOp> nablas = {dunkl_nabla(g, kplus, coordinate_vector(ctx, n, 0)),
                                      dunkl_nabla(g, kminus, coordinate_vector(ctx, n, 0))};
    for (int d = 0; d <= D; ++d) {
        for (const auto& e : monomials_of_degree(n, d)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            RatFun expect = RatFun::from_poly(g, dunkl_apply(g, kplus, coordinate_vector(ctx, n, 0), f));
            for (int cand = 0; cand < 4; ++cand) {
                if (!pass[static_cast<size_t>(cand)]) continue;
                int s1 = (cand < 2) ? 1 : -1;
                const DiffReflOp& nab = nablas[static_cast<size_t>(cand % 2)];
                RatFun inner = rf_mul(g, delta_pow(-s1 * kval), RatFun::from_poly(g, f));
                RatFun got = rf_mul(g, delta_pow(s1 * kval), op_apply(g, nab, inner));
                if (!(got == expect)) pass[static_cast<size_t>(cand)] = false;
            }
        }
    }
    return pass;
}

}  // namespace dunkl
