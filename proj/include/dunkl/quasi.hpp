#pragma once

#include "dunkl/diffop.hpp"

namespace dunkl {

// Quasi-invariants Q_k: polynomials f with ord_H(e_{H,-i}(f)) >= n_H k_{H,i}
// for every hyperplane H and residue i. Defined for integral nonnegative
// multiplicities only.

namespace detail {

inline void require_integral(const Multiplicity& k) {
    if (!k.is_integral_nonneg())
        throw error("quasi-invariants require an integral nonnegative multiplicity");
}

inline int required_order(const ReflectionGroup& g, const Multiplicity& k, int h, int i) {
    Rat v = k.at(g, h, i) * Rat(g.hyperplanes()[static_cast<size_t>(h)].order);
    return static_cast<int>(rat_floor(v));
}

// Canonical reduced row basis of a span (zero rows removed).
inline Mat reduced_span(Mat rows) {
    row_reduce(rows);
    Mat out;
    for (auto& r : rows) {
        bool nz = false;
        for (const auto& c : r)
            if (!c.is_zero()) nz = true;
        if (nz) out.push_back(std::move(r));
    }
    return out;
}

inline Vec poly_coords(const MPoly& f, const std::vector<Exps>& mons) {
    Vec row;
    row.reserve(mons.size());
    for (const auto& e : mons) row.push_back(f.coeff(e));
    return row;
}

}  // namespace detail

inline CheckReport qk_membership(const ReflectionGroup& g, const Multiplicity& k, const MPoly& f) {
    detail::require_integral(k);
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        int n = g.hyperplanes()[h].order;
        for (int i = 1; i < n; ++i) {
            int req = detail::required_order(g, k, static_cast<int>(h), i);
            if (req == 0) continue;
            MPoly comp = idempotent(g, static_cast<int>(h), -i).apply(g, f);
            int ord = ord_along(g, static_cast<int>(h), comp);
            if (ord < req)
                return {false, "hyperplane " + std::to_string(h) + ", residue " + std::to_string(i) +
                                   ": order " + std::to_string(ord) + " < " + std::to_string(req)};
        }
    }
    return {true, ""};
}

// Linear conditions cutting out the degree-d slice of Q_k inside the span
// of the degree-d monomials.
inline Mat qk_conditions(const ReflectionGroup& g, const Multiplicity& k,
                         const std::vector<Exps>& mons) {
    Mat rows;
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        const auto& hp = g.hyperplanes()[h];
        AlphaCoords ac(g.context(), hp.alpha);
        for (int i = 1; i < hp.order; ++i) {
            int req = detail::required_order(g, k, static_cast<int>(h), i);
            if (req == 0) continue;
            GroupAlgebraElement e = idempotent(g, static_cast<int>(h), -i);
            // Coefficients of the low alpha-powers of e(f), per monomial.
            std::map<Exps, Vec> cond;
            for (size_t j = 0; j < mons.size(); ++j) {
                MPoly img = ac.to(e.apply(g, MPoly::monomial(g.context(), mons[j],
                                                             Cyc::from_int(g.context(), 1))));
                for (const auto& [ex, c] : img.terms()) {
                    if (ex[static_cast<size_t>(ac.pivot())] >= req) continue;
                    auto it = cond.find(ex);
                    if (it == cond.end())
                        it = cond.emplace(ex, Vec(mons.size(), Cyc::zero(g.context()))).first;
                    it->second[j] += c;
                }
            }
            for (auto& [ex, row] : cond) rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::vector<MPoly> qk_basis(const ReflectionGroup& g, const Multiplicity& k, int d) {
    detail::require_integral(k);
    auto mons = monomials_of_degree(g.dim(), d);
    return graded_solve(g.context(), mons, qk_conditions(g, k, mons));
}

struct QuasiModule {
    Multiplicity k;
    std::vector<std::vector<MPoly>> slices;  // slices[d] = basis of degree d
};

inline QuasiModule quasi_module(const ReflectionGroup& g, const Multiplicity& k, int dmax) {
    QuasiModule q;
    q.k = k;
    for (int d = 0; d <= dmax; ++d) q.slices.push_back(qk_basis(g, k, d));
    return q;
}

// Hilbert data: slice dimensions and the numerator
// p(t) = Hilb(Q_k) * prod_i (1 - t^{d_i}), certified to be a polynomial
// with nonnegative integer coefficients summing to |W|.
struct HilbertReport {
    std::vector<int> dims;
    std::vector<long long> numerator;  // trimmed coefficient list of p(t)
    long long p_at_one = 0;

    std::string numerator_str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t d = 0; d < numerator.size(); ++d) {
            if (numerator[d] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (numerator[d] != 1 || d == 0) os << numerator[d];
            if (d > 0) {
                if (numerator[d] != 1) os << "*";
                os << "t";
                if (d > 1) os << "^" << d;
            }
        }
        if (first) os << "0";
        return os.str();
    }
};

inline HilbertReport qk_hilbert(const ReflectionGroup& g, const Multiplicity& k, int dmax) {
    HilbertReport rep;
    for (int d = 0; d <= dmax; ++d)
        rep.dims.push_back(static_cast<int>(qk_basis(g, k, d).size()));
    // Multiply the dimension series by prod (1 - t^{d_i}).
    std::vector<long long> p(rep.dims.begin(), rep.dims.end());
    for (int deg : g.degrees()) {
        std::vector<long long> next(p.size(), 0);
        for (size_t d = 0; d < p.size(); ++d) {
            next[d] += p[d];
            if (d + static_cast<size_t>(deg) < p.size()) next[d + static_cast<size_t>(deg)] -= p[d];
        }
        p = std::move(next);
    }
    int maxdeg = *std::max_element(g.degrees().begin(), g.degrees().end());
    long long sum = 0;
    for (size_t d = 0; d < p.size(); ++d) {
        if (p[d] < 0) throw inconclusive("negative numerator coefficient; raise the degree cap");
        sum += p[d];
        // The top window must have stabilized to zero, otherwise the
        // truncation may be hiding later terms.
        if (d + static_cast<size_t>(maxdeg) >= p.size() && p[d] != 0)
            throw inconclusive("numerator has not terminated; raise the degree cap");
    }
    if (sum != g.order())
        throw inconclusive("numerator coefficients do not sum to the group order");
    while (!p.empty() && p.back() == 0) p.pop_back();
    rep.numerator = std::move(p);
    rep.p_at_one = sum;
    return rep;
}

// Graded Nakayama generators of Q_k over C[V]^W, with a freeness check up
// to the degree cap: the generator degrees reproduce the Hilbert numerator
// and the products (invariant basis) x (generators) are independent.
inline std::vector<MPoly> freeness_certificate(const ReflectionGroup& g, const Multiplicity& k,
                                               int dmax) {
    HilbertReport hilb = qk_hilbert(g, k, dmax);
    QuasiModule q = quasi_module(g, k, dmax);
    std::vector<std::vector<MPoly>> inv;  // invariant slice bases
    for (int d = 0; d <= dmax; ++d) inv.push_back(invariant_basis(g, d));

    std::vector<MPoly> gens;
    std::vector<long long> gen_degrees(static_cast<size_t>(dmax) + 1, 0);
    for (int d = 0; d <= dmax; ++d) {
        auto mons = monomials_of_degree(g.dim(), d);
        // Span of (C[V]^W_+ . Q_k) in degree d.
        Mat rows;
        for (int e = 1; e <= d; ++e)
            for (const auto& b : inv[static_cast<size_t>(e)])
                for (const auto& f : q.slices[static_cast<size_t>(d - e)])
                    rows.push_back(detail::poly_coords(b * f, mons));
        rows = detail::reduced_span(std::move(rows));
        int base_rank = static_cast<int>(rows.size());
        for (const auto& f : q.slices[static_cast<size_t>(d)]) {
            Mat probe = rows;
            probe.push_back(detail::poly_coords(f, mons));
            probe = detail::reduced_span(std::move(probe));
            if (static_cast<int>(probe.size()) > base_rank) {
                gens.push_back(f);
                ++gen_degrees[static_cast<size_t>(d)];
                rows = std::move(probe);
                base_rank = static_cast<int>(rows.size());
            }
        }
    }

    // Generator degrees must reproduce the Hilbert numerator.
    for (size_t d = 0; d <= static_cast<size_t>(dmax); ++d) {
        long long expect = d < hilb.numerator.size() ? hilb.numerator[d] : 0;
        if (gen_degrees[d] != expect)
            throw inconclusive("generator degrees disagree with the Hilbert numerator");
    }

    // Independence over C[V]^W: in each degree the products of invariant
    // slice bases with the generators have full rank and span the slice.
    for (int d = 0; d <= dmax; ++d) {
        auto mons = monomials_of_degree(g.dim(), d);
        Mat rows;
        for (const auto& gen : gens) {
            int gd = gen.total_degree() < 0 ? 0 : gen.total_degree();
            if (gd > d) continue;
            for (const auto& b : inv[static_cast<size_t>(d - gd)])
                rows.push_back(detail::poly_coords(b * gen, mons));
        }
        int count = static_cast<int>(rows.size());
        int rank = mat_rank(std::move(rows));
        if (rank != count || rank != static_cast<int>(q.slices[static_cast<size_t>(d)].size()))
            throw inconclusive("generators are not free up to the degree cap");
    }
    return gens;
}

// Coefficient algebra A_k = {p : p Q_k c Q_k}. Candidate parameter from
// a hyperplane-local formula, then verified two ways up to the degree cap.
//
// Derivation of the candidate (local to one hyperplane of order n): a term
// of alpha-order m contributes to the isotypic component i = m mod n, so a
// product with a module element of order n k_j + j (+ multiples of n) must
// reach order n k_{(i+j) mod n} + ((i+j) mod n). Solving for the order of
// the multiplier gives
//   k'_{C,i} = max_j max(0, k_{C,(i+j) mod n} - k_{C,j} - [i+j >= n]),
// where the -1 accounts for the residue wrap.
inline Multiplicity ak_compute(const ReflectionGroup& g, const Multiplicity& k, int dmax) {
    detail::require_integral(k);
    std::vector<std::vector<Rat>> per;
    for (const auto& row : k.per_orbit()) {
        int n = static_cast<int>(row.size());
        std::vector<Rat> out(static_cast<size_t>(n), Rat(0));
        for (int i = 0; i < n; ++i) {
            Rat best(0);
            for (int j = 0; j < n; ++j) {
                Rat diff = row[static_cast<size_t>((i + j) % n)] - row[static_cast<size_t>(j)];
                if (i + j >= n) diff -= 1;
                if (diff > best) best = diff;
            }
            out[static_cast<size_t>(i)] = best;
        }
        per.push_back(std::move(out));
    }
    Multiplicity kprime(g, std::move(per));

    QuasiModule q = quasi_module(g, k, dmax);
    // (a) Q_{k'} multiplies Q_k into Q_k.
    for (int a = 0; a <= dmax; ++a)
        for (const auto& p : qk_basis(g, kprime, a))
            for (int b = 0; a + b <= dmax; ++b)
                for (const auto& f : q.slices[static_cast<size_t>(b)])
                    if (!qk_membership(g, k, p * f).pass)
                        throw verification_failed(
                            "multiplier candidate fails to preserve the module: " + p.str());
    // (b) every monomial that multiplies Q_k into Q_k lies in Q_{k'}.
    for (int a = 0; a <= dmax; ++a) {
        for (const auto& e : monomials_of_degree(g.dim(), a)) {
            MPoly mu = MPoly::monomial(g.context(), e, Cyc::from_int(g.context(), 1));
            bool multiplies = true;
            for (int b = 0; multiplies && a + b <= dmax; ++b)
                for (const auto& f : q.slices[static_cast<size_t>(b)])
                    if (!qk_membership(g, k, mu * f).pass) {
                        multiplies = false;
                        break;
                    }
            if (multiplies && !qk_membership(g, kprime, mu).pass)
                throw verification_failed("multiplier " + mu.str() +
                                          " is not captured by the candidate parameter");
        }
    }
    return kprime;
}

// ---------------------------------------------------------------------------
// CW-valued quasi-invariants: elements phi of C[V] (x) CW, stored as one
// polynomial per group element, subject to
// (1 (x) e_{H,i}) phi == 0 mod alpha_H^{n_H k_{H,i}} (x) CW.

using BoldElement = std::vector<MPoly>;          // indexed by group element
using EquivariantSlice = std::vector<BoldElement>;

namespace detail {

// Component at group element v of (1 (x) e_{H,i}) phi, as weights on the
// components of phi: coefficient of phi[w] summed over stabilizer elements.
inline std::map<int, Cyc> idempotent_weights(const ReflectionGroup& g, int h, int i, int v) {
    const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
    Cyc inv_n = Cyc::from_rat(g.context(), Rat(1, hp.order));
    std::map<int, Cyc> weights;
    for (int u : hp.stabilizer) {
        Cyc d = Cyc::from_int(g.context(), 1);
        Cyc det_inv = g.det(u).inverse();
        int ii = ((i % hp.order) + hp.order) % hp.order;
        for (int t = 0; t < ii; ++t) d *= det_inv;
        int w = g.mul(g.inv(u), v);
        auto it = weights.find(w);
        if (it == weights.end())
            weights.emplace(w, d * inv_n);
        else
            it->second += d * inv_n;
    }
    return weights;
}

}  // namespace detail

inline CheckReport bold_membership(const ReflectionGroup& g, const Multiplicity& k,
                                   const BoldElement& phi) {
    detail::require_integral(k);
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        int n = g.hyperplanes()[h].order;
        for (int i = 1; i < n; ++i) {
            int req = detail::required_order(g, k, static_cast<int>(h), i);
            if (req == 0) continue;
            for (int v = 0; v < g.order(); ++v) {
                MPoly comp = MPoly::zero(g.context(), g.dim());
                for (const auto& [w, c] : detail::idempotent_weights(g, static_cast<int>(h), i, v))
                    comp += phi[static_cast<size_t>(w)] * c;
                int ord = ord_along(g, static_cast<int>(h), comp);
                if (ord < req)
                    return {false, "hyperplane " + std::to_string(h) + ", residue " +
                                       std::to_string(i) + ", component " + std::to_string(v) +
                                       ": order " + std::to_string(ord) + " < " +
                                       std::to_string(req)};
            }
        }
    }
    return {true, ""};
}

inline EquivariantSlice bold_qk_basis(const ReflectionGroup& g, const Multiplicity& k, int d) {
    detail::require_integral(k);
    auto mons = monomials_of_degree(g.dim(), d);
    size_t nm = mons.size(), nw = static_cast<size_t>(g.order());
    size_t ncols = nm * nw;  // unknown phi[w] = sum_j x_{w,j} mon_j
    Mat rows;
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        const auto& hp = g.hyperplanes()[h];
        AlphaCoords ac(g.context(), hp.alpha);
        // Monomials in alpha-adapted coordinates, shared across conditions.
        std::vector<MPoly> adapted;
        for (const auto& e : mons)
            adapted.push_back(ac.to(MPoly::monomial(g.context(), e, Cyc::from_int(g.context(), 1))));
        for (int i = 1; i < hp.order; ++i) {
            int req = detail::required_order(g, k, static_cast<int>(h), i);
            if (req == 0) continue;
            for (int v = 0; v < g.order(); ++v) {
                auto weights = detail::idempotent_weights(g, static_cast<int>(h), i, v);
                std::map<Exps, Vec> cond;
                for (const auto& [w, cw] : weights) {
                    for (size_t j = 0; j < nm; ++j) {
                        for (const auto& [ex, c] : adapted[j].terms()) {
                            if (ex[static_cast<size_t>(ac.pivot())] >= req) continue;
                            auto it = cond.find(ex);
                            if (it == cond.end())
                                it = cond.emplace(ex, Vec(ncols, Cyc::zero(g.context()))).first;
                            it->second[static_cast<size_t>(w) * nm + j] += cw * c;
                        }
                    }
                }
                for (auto& [ex, row] : cond) rows.push_back(std::move(row));
            }
        }
    }
    EquivariantSlice out;
    for (const auto& sol : kernel_basis(rows, static_cast<int>(ncols), g.context())) {
        BoldElement phi;
        for (size_t w = 0; w < nw; ++w) {
            MPoly p(g.context(), g.dim());
            for (size_t j = 0; j < nm; ++j) p.add_term(mons[j], sol[w * nm + j]);
            phi.push_back(std::move(p));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

// Diagonal action: u.(f (x) w) = u.f (x) uw.
inline BoldElement bold_act(const ReflectionGroup& g, int u, const BoldElement& phi) {
    BoldElement out(static_cast<size_t>(g.order()), MPoly::zero(g.context(), g.dim()));
    for (int v = 0; v < g.order(); ++v)
        out[static_cast<size_t>(v)] = g.act(u, phi[static_cast<size_t>(g.mul(g.inv(u), v))]);
    return out;
}

inline BoldElement bold_ga_act(const ReflectionGroup& g, const GroupAlgebraElement& a,
                               const BoldElement& phi) {
    BoldElement out(static_cast<size_t>(g.order()), MPoly::zero(g.context(), g.dim()));
    for (const auto& [u, c] : a.coeffs()) {
        BoldElement part = bold_act(g, u, phi);
        for (size_t v = 0; v < out.size(); ++v) out[v] += part[v] * c;
    }
    return out;
}

// Dunkl operator in the induced-module action: the derivative and the
// polynomial coefficients act through the first factor, group letters act
// diagonally. Exactness of the division mirrors the scalar case.
inline BoldElement bold_dunkl(const ReflectionGroup& g, const Multiplicity& k, const Vec& xi,
                              const BoldElement& phi) {
    BoldElement out(static_cast<size_t>(g.order()), MPoly::zero(g.context(), g.dim()));
    for (size_t v = 0; v < out.size(); ++v)
        for (int i = 0; i < g.dim(); ++i) {
            const Cyc& c = xi[static_cast<size_t>(i)];
            if (!c.is_zero()) out[v] += phi[v].derivative(i) * c;
        }
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        Cyc axi = g.alpha_of(static_cast<int>(h), xi);
        if (axi.is_zero()) continue;
        BoldElement img = bold_ga_act(g, hyperplane_weight(g, k, static_cast<int>(h)), phi);
        for (size_t v = 0; v < out.size(); ++v) {
            if (img[v].is_zero()) continue;
            out[v] -= exact_divide(g.hyperplanes()[h].alpha, img[v]) * axi;
        }
    }
    return out;
}

namespace detail {

inline Vec bold_coords(const BoldElement& phi, const std::vector<Exps>& mons) {
    Vec row;
    for (const auto& f : phi)
        for (const auto& e : mons) row.push_back(f.coeff(e));
    return row;
}

}  // namespace detail

// Stability of the CW-valued module: coordinate multiplication, the
// diagonal group action, the induced Dunkl action, and the symmetrization
// identity e . (bold slice) = e . (Q_k (x) 1) per degree.
inline CheckReport check_bold_stability(const ReflectionGroup& g, const Multiplicity& k, int dmax) {
    const CycCtxPtr& ctx = g.context();
    GroupAlgebraElement symm(ctx);
    for (int w = 0; w < g.order(); ++w) symm.add(w, Cyc::from_rat(ctx, Rat(1, g.order())));

    for (int d = 0; d <= dmax; ++d) {
        EquivariantSlice slice = bold_qk_basis(g, k, d);
        for (const auto& phi : slice) {
            // (a) coordinate multiplication and the diagonal action.
            if (d < dmax) {
                for (int l = 0; l < g.dim(); ++l) {
                    MPoly xl = MPoly::variable(ctx, g.dim(), l);
                    BoldElement shifted;
                    for (const auto& f : phi) shifted.push_back(xl * f);
                    if (!bold_membership(g, k, shifted).pass)
                        return {false, "coordinate multiplication leaves the module at degree " +
                                           std::to_string(d)};
                }
            }
            for (int w : g.generator_indices())
                if (!bold_membership(g, k, bold_act(g, w, phi)).pass)
                    return {false, "diagonal action leaves the module at degree " + std::to_string(d)};
            // (b) induced Dunkl action drops one degree and stays inside.
            for (int i = 0; i < g.dim(); ++i) {
                try {
                    BoldElement t = bold_dunkl(g, k, coordinate_vector(ctx, g.dim(), i), phi);
                    if (!bold_membership(g, k, t).pass)
                        return {false, "Dunkl action leaves the module at degree " + std::to_string(d)};
                } catch (const not_divisible&) {
                    return {false, "Dunkl action produced a pole at degree " + std::to_string(d)};
                }
            }
        }
        // (c) symmetrization identity per degree.
        auto mons = monomials_of_degree(g.dim(), d);
        Mat left, right;
        for (const auto& phi : slice)
            left.push_back(detail::bold_coords(bold_ga_act(g, symm, phi), mons));
        for (const auto& f : qk_basis(g, k, d)) {
            BoldElement unit(static_cast<size_t>(g.order()), MPoly::zero(ctx, g.dim()));
            unit[0] = f;
            right.push_back(detail::bold_coords(bold_ga_act(g, symm, unit), mons));
        }
        if (!mat_eq(detail::reduced_span(std::move(left)), detail::reduced_span(std::move(right))))
            return {false, "symmetrized slices disagree at degree " + std::to_string(d)};
    }
    return {true, ""};
}

// Stability of Q_k under the restricted invariant operator L_P, verified on
// the slice bases up to the degree cap.
inline CheckReport check_uk_stability(const ReflectionGroup& g, const Multiplicity& k,
                                      const MPoly& p, int dmax) {
    detail::require_integral(k);
    CMOperator op = cm_operator(g, k, p);
    for (int d = 0; d <= dmax; ++d) {
        for (const auto& f : qk_basis(g, k, d)) {
            RatFun img = op.apply(g, RatFun::from_poly(g, f));
            if (!img.is_polynomial())
                return {false, "operator output has a pole on " + f.str()};
            auto rep = qk_membership(g, k, img.as_poly());
            if (!rep.pass) return {false, "image of " + f.str() + " fails: " + rep.witness};
        }
    }
    return {true, ""};
}

// Truncated membership in D(Q_k): the operator maps every basis element of
// degree <= dmax into Q_k. The verdict is only "verified up to the cap".
inline CheckReport dqk_membership(const ReflectionGroup& g, const Multiplicity& k,
                                  const CMOperator& op, int dmax) {
    detail::require_integral(k);
    for (int d = 0; d <= dmax; ++d) {
        for (const auto& f : qk_basis(g, k, d)) {
            RatFun img = op.apply(g, RatFun::from_poly(g, f));
            if (!img.is_polynomial()) return {false, "pole on " + f.str()};
            auto rep = qk_membership(g, k, img.as_poly());
            if (!rep.pass)
                return {false, "witness f = " + f.str() + ", image " + img.as_poly().str()};
        }
    }
    return {true, "verified up to degree " + std::to_string(dmax)};
}

}  // namespace dunkl
