#pragma once

#include "dunkl/diffop.hpp"

namespace dunkl {

// Element of C[V_reg] (x) tau in a fixed basis of tau.
using Section = std::vector<RatFun>;

// Logarithmic residue matrices B_H = sum_i n_H k_{H,i} rho(e_{H,i}), one
// per hyperplane.
inline std::vector<Mat> kz_residues(const ReflectionGroup& g, const Multiplicity& k,
                                    const WRep& tau) {
    std::vector<Mat> out;
    for (size_t h = 0; h < g.hyperplanes().size(); ++h)
        out.push_back(tau.of(hyperplane_weight(g, k, static_cast<int>(h))));
    return out;
}

// Spectral sanity of a residue matrix: prod over the distinct candidate
// eigenvalues {n_H k_{H,i}} of (B - value I) must vanish.
inline bool residue_annihilated(const ReflectionGroup& g, const Multiplicity& k, int h,
                                const Mat& b) {
    const CycCtxPtr& ctx = g.context();
    int n = static_cast<int>(b.size());
    const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
    std::vector<Rat> values;
    for (int i = 0; i < hp.order; ++i) values.push_back(k.at(g, h, i) * Rat(hp.order));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Mat acc = identity_matrix(ctx, n);
    for (const Rat& v : values) {
        Mat shifted = b;
        Cyc vc = Cyc::from_rat(ctx, v);
        for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i)][static_cast<size_t>(i)] -= vc;
        acc = mat_mul(acc, shifted);
    }
    Mat zero(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Cyc::zero(ctx)));
    return mat_eq(acc, zero);
}

// W-equivariance of the residues: B_{wH} = rho(w) B_H rho(w)^{-1}.
inline bool residues_equivariant(const ReflectionGroup& g, const WRep& tau,
                                 const std::vector<Mat>& b) {
    for (int w = 0; w < g.order(); ++w) {
        const Mat& rw = tau.mats[static_cast<size_t>(w)];
        const Mat& rwi = tau.mats[static_cast<size_t>(g.inv(w))];
        for (size_t h = 0; h < b.size(); ++h) {
            int h2 = g.hyperplane_image(w, static_cast<int>(h)).first;
            if (!mat_eq(b[static_cast<size_t>(h2)], mat_mul(rw, mat_mul(b[h], rwi)))) return false;
        }
    }
    return true;
}

// Covariant derivative of the connection:
// nabla_xi (f (x) v) = d_xi f (x) v + sum_H (alpha_H(xi)/alpha_H) f (x) B_H v.
inline Section kz_derivative(const ReflectionGroup& g, const std::vector<Mat>& residues, int var,
                             const Section& s) {
    size_t dim = s.size();
    Section out;
    out.reserve(dim);
    for (size_t a = 0; a < dim; ++a) out.push_back(rf_derivative(g, s[a], var));
    for (size_t h = 0; h < g.hyperplanes().size(); ++h) {
        Cyc axi = g.hyperplanes()[h].alpha[static_cast<size_t>(var)];
        if (axi.is_zero()) continue;
        RatFun inv = rf_scale(g, RatFun::alpha_inverse(g, static_cast<int>(h)), axi);
        for (size_t a = 0; a < dim; ++a) {
            for (size_t bcol = 0; bcol < dim; ++bcol) {
                const Cyc& entry = residues[h][a][bcol];
                if (entry.is_zero()) continue;
                out[a] = rf_add(g, out[a], rf_scale(g, rf_mul(g, inv, s[bcol]), entry));
            }
        }
    }
    return out;
}

// Flatness: commutators of covariant derivatives vanish on a family of
// sections, plus the residue criterion at every codimension-2 stratum.
inline CheckReport check_flatness(const ReflectionGroup& g, const Multiplicity& k, const WRep& tau,
                                  int bound) {
    const CycCtxPtr& ctx = g.context();
    int n = g.dim();
    auto residues = kz_residues(g, k, tau);
    if (!residues_equivariant(g, tau, residues)) return {false, "residues are not equivariant"};
    for (size_t h = 0; h < residues.size(); ++h)
        if (!residue_annihilated(g, k, static_cast<int>(h), residues[h]))
            return {false, "residue spectrum outside the idempotent values"};

    if (n >= 2) {
        // Section family: monomials up to the bound and reciprocal powers.
        std::vector<RatFun> fams;
        for (int d = 0; d <= bound; ++d)
            for (const auto& e : monomials_of_degree(n, d))
                fams.push_back(RatFun::from_poly(g, MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1))));
        for (size_t h = 0; h < g.hyperplanes().size(); ++h)
            for (int m = 1; m <= 2; ++m) fams.push_back(RatFun::alpha_inverse(g, static_cast<int>(h), m));

        for (const auto& f : fams) {
            for (int v = 0; v < tau.dim; ++v) {
                Section s(static_cast<size_t>(tau.dim), RatFun::zero(g));
                s[static_cast<size_t>(v)] = f;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        Section a = kz_derivative(g, residues, j, kz_derivative(g, residues, i, s));
                        Section b = kz_derivative(g, residues, i, kz_derivative(g, residues, j, s));
                        for (int c = 0; c < tau.dim; ++c)
                            if (!(a[static_cast<size_t>(c)] == b[static_cast<size_t>(c)]))
                                return {false, "curvature nonzero on " + f.str(g) + " (x) e" +
                                                   std::to_string(v + 1)};
                    }
            }
        }
    }

    // Codimension-2 residue criterion: for every intersection X of two
    // hyperplanes, each B_H with H containing X commutes with the sum of
    // all such B_{H'}. Strata are deduplicated by the echelon form of the
    // span of their defining covectors.
    size_t nh = g.hyperplanes().size();
    std::vector<Mat> seen;
    for (size_t h1 = 0; h1 < nh; ++h1)
        for (size_t h2 = h1 + 1; h2 < nh; ++h2) {
            Mat span = {g.hyperplanes()[h1].alpha, g.hyperplanes()[h2].alpha};
            row_reduce(span);
            bool dup = false;
            for (const auto& m : seen)
                if (mat_eq(m, span)) dup = true;
            if (dup) continue;
            seen.push_back(span);
            // All hyperplanes whose covector lies in the span.
            std::vector<size_t> members;
            Mat total(static_cast<size_t>(tau.dim), Vec(static_cast<size_t>(tau.dim), Cyc::zero(ctx)));
            for (size_t h = 0; h < nh; ++h) {
                Mat probe = span;
                probe.push_back(g.hyperplanes()[h].alpha);
                if (mat_rank(std::move(probe)) == 2) {
                    members.push_back(h);
                    total = mat_add(total, residues[h]);
                }
            }
            for (size_t h : members)
                if (!mat_eq(mat_mul(residues[h], total), mat_mul(total, residues[h])))
                    return {false, "codimension-2 residue criterion fails"};
        }
    return {true, ""};
}

}  // namespace dunkl
