#pragma once

#include <numeric>
#include <string>

#include "dunkl/mpoly.hpp"

namespace dunkl {

struct GroupElement {
    Mat matrix;
    Cyc det;
};

struct Hyperplane {
    Vec alpha;           // linear form, first nonzero coordinate normalized to 1
    Vec v;               // normal vector for the standard Hermitian form
    int order = 0;       // n_H = |W_H|
    std::vector<int> stabilizer;  // element indices of W_H
    int distinguished = -1;       // s_H, det = zeta_{n_H}
    int orbit = -1;
    MPoly alpha_form;
};

// Finite complex reflection group, enumerated from generator matrices.
// Immutable after construction; every query is read-only.
class ReflectionGroup {
public:
    ReflectionGroup(CycCtxPtr ctx, std::vector<Mat> generators, int cap = 2000,
                    std::string family = "explicit")
        : ctx_(std::move(ctx)), family_(std::move(family)) {
        if (generators.empty()) throw error("no generators");
        dim_ = static_cast<int>(generators[0].size());
        enumerate(generators, cap);
        find_hyperplanes();
        compute_orbits();
        compute_delta();
        compute_degrees();
    }

    const CycCtxPtr& context() const { return ctx_; }
    int dim() const { return dim_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const std::string& family() const { return family_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<int>& generator_indices() const { return generator_idx_; }
    const MPoly& delta() const { return delta_; }
    const MPoly& delta_star() const { return delta_star_; }

    int identity_index() const { return 0; }
    int mul(int a, int b) const { return mul_table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int inv(int a) const { return inv_table_[static_cast<size_t>(a)]; }
    const Cyc& det(int a) const { return elements_[static_cast<size_t>(a)].det; }

    bool is_coxeter() const {
        for (const auto& h : hyperplanes_)
            if (h.order != 2) return false;
        return true;
    }

    // (w.f)(x) = f(w^{-1} x).
    MPoly act(int w, const MPoly& f) const {
        if (w == 0) return f;
        return f.substitute_linear(elements_[static_cast<size_t>(inv(w))].matrix);
    }

    // w maps hyperplane H to hyperplane H' with w.alpha_H = scalar * alpha_H';
    // returns (H', scalar).
    std::pair<int, Cyc> hyperplane_image(int w, int h) const {
        const auto& entry = hyp_image_[static_cast<size_t>(w)][static_cast<size_t>(h)];
        return {entry.first, entry.second};
    }

    // w applied to a vector of V: matrix action.
    Vec act_vector(int w, const Vec& xi) const {
        return mat_vec(elements_[static_cast<size_t>(w)].matrix, xi);
    }

    // Action on Sym(V) (polynomials in dual coordinates): a linear form
    // whose coefficient vector is v in V maps to the form of w.v.
    MPoly act_dual(int w, const MPoly& f) const {
        if (w == 0) return f;
        const Mat& m = elements_[static_cast<size_t>(w)].matrix;
        Mat t(m.size(), Vec(m.size(), Cyc::zero(ctx_)));
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j) t[i][j] = m[j][i];
        return f.substitute_linear(t);
    }

    int hyperplane_index(const Vec& normalized_alpha) const {
        for (size_t h = 0; h < hyperplanes_.size(); ++h)
            if (hyperplanes_[h].alpha == normalized_alpha) return static_cast<int>(h);
        return -1;
    }

    // alpha_H evaluated on a vector xi in V.
    Cyc alpha_of(int h, const Vec& xi) const {
        Cyc out = Cyc::zero(ctx_);
        const auto& a = hyperplanes_[static_cast<size_t>(h)].alpha;
        for (size_t i = 0; i < a.size(); ++i) out += a[i] * xi[i];
        return out;
    }

private:
    static std::string mat_key(const Mat& m) {
        std::ostringstream os;
        for (const auto& row : m)
            for (const auto& c : row) {
                for (const auto& r : c.coeffs()) os << r.str() << ",";
                os << ";";
            }
        return os.str();
    }

    void enumerate(const std::vector<Mat>& generators, int cap) {
        Cyc one = Cyc::from_int(ctx_, 1);
        Mat id = identity_matrix(ctx_, dim_);
        // Generators must be invertible and unitary for the standard form.
        for (const auto& g : generators) {
            if (!mat_eq(mat_mul(conj_transpose(g), g), id)) throw not_unitary();
        }
        std::map<std::string, int> index;
        elements_.push_back({id, one});
        index[mat_key(id)] = 0;
        std::vector<Mat> gens = generators;
        std::vector<int> frontier = {0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int e : frontier) {
                for (const auto& g : gens) {
                    Mat prod = mat_mul(elements_[static_cast<size_t>(e)].matrix, g);
                    std::string key = mat_key(prod);
                    if (index.count(key)) continue;
                    if (static_cast<int>(elements_.size()) >= cap)
                        throw cap_exceeded("group order exceeds cap " + std::to_string(cap));
                    int idx = static_cast<int>(elements_.size());
                    Cyc d = mat_det(prod);
                    elements_.push_back({std::move(prod), std::move(d)});
                    index[key] = idx;
                    next.push_back(idx);
                }
            }
            frontier = std::move(next);
        }
        for (const auto& g : generators) generator_idx_.push_back(index.at(mat_key(g)));
        // Multiplication and inverse tables.
        size_t n = elements_.size();
        mul_table_.assign(n, std::vector<int>(n, -1));
        inv_table_.assign(n, -1);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                Mat prod = mat_mul(elements_[a].matrix, elements_[b].matrix);
                auto it = index.find(mat_key(prod));
                if (it == index.end()) throw error("closure violated");
                mul_table_[a][b] = it->second;
                if (it->second == 0) {
                    inv_table_[a] = static_cast<int>(b);
                }
            }
    }

    void find_hyperplanes() {
        Cyc one = Cyc::from_int(ctx_, 1);
        for (size_t w = 1; w < elements_.size(); ++w) {
            Mat d = elements_[w].matrix;
            for (int i = 0; i < dim_; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] -= one;
            if (mat_rank(d) != 1) continue;  // pseudoreflections only
            // Any nonzero row of (w - I) is a linear form cutting out the
            // fixed hyperplane; normalize its first nonzero coordinate to 1.
            Vec alpha;
            for (const auto& row : d) {
                bool nz = false;
                for (const auto& c : row)
                    if (!c.is_zero()) nz = true;
                if (nz) {
                    alpha = row;
                    break;
                }
            }
            size_t lead = 0;
            while (alpha[lead].is_zero()) ++lead;
            Cyc inv_lead = alpha[lead].inverse();
            for (auto& c : alpha) c *= inv_lead;
            if (hyperplane_index(alpha) >= 0) continue;
            Hyperplane h;
            h.alpha = alpha;
            h.v.reserve(alpha.size());
            for (const auto& c : alpha) h.v.push_back(c.conj());
            h.alpha_form = MPoly::linear_form(ctx_, alpha);
            hyperplanes_.push_back(std::move(h));
        }
        // Stabilizers: elements fixing the hyperplane pointwise.
        for (auto& h : hyperplanes_) {
            std::vector<Vec> basis = hyperplane_basis(h.alpha);
            for (size_t w = 0; w < elements_.size(); ++w) {
                bool fixes = true;
                for (const auto& b : basis) {
                    Vec img = mat_vec(elements_[w].matrix, b);
                    for (size_t i = 0; i < img.size(); ++i)
                        if (!(img[i] == b[i])) fixes = false;
                }
                if (fixes) h.stabilizer.push_back(static_cast<int>(w));
            }
            h.order = static_cast<int>(h.stabilizer.size());
            if (h.order < 2) throw error("hyperplane stabilizer is trivial");
            if (ctx_->conductor() % h.order != 0)
                throw error("conductor does not contain zeta_{n_H}");
            Cyc zeta_nh = Cyc::root_of_unity(ctx_, h.order);
            for (int w : h.stabilizer)
                if (det(w) == zeta_nh) h.distinguished = w;
            if (h.distinguished < 0) throw error("no distinguished reflection s_H");
        }
    }

    // Basis of Ker(alpha): b_l = e_l - alpha_l e_j for the pivot j.
    std::vector<Vec> hyperplane_basis(const Vec& alpha) const {
        size_t pivot = 0;
        while (alpha[pivot].is_zero()) ++pivot;
        std::vector<Vec> basis;
        for (size_t l = 0; l < alpha.size(); ++l) {
            if (l == pivot) continue;
            Vec b(alpha.size(), Cyc::zero(ctx_));
            b[l] = Cyc::from_int(ctx_, 1);
            b[pivot] = -(alpha[l] / alpha[pivot]);
            basis.push_back(std::move(b));
        }
        return basis;  // empty in dimension 1, where H = {0}

    }

    void compute_orbits() {
        size_t nw = elements_.size(), nh = hyperplanes_.size();
        hyp_image_.assign(nw, std::vector<std::pair<int, Cyc>>(nh, {-1, Cyc::zero(ctx_)}));
        for (size_t w = 0; w < nw; ++w) {
            // w.alpha = alpha o w^{-1}: row vector alpha times matrix of w^{-1}.
            const Mat& mw_inv = elements_[static_cast<size_t>(inv(static_cast<int>(w)))].matrix;
            for (size_t h = 0; h < nh; ++h) {
                Vec img(static_cast<size_t>(dim_), Cyc::zero(ctx_));
                const Vec& a = hyperplanes_[h].alpha;
                for (int j = 0; j < dim_; ++j)
                    for (int i = 0; i < dim_; ++i)
                        img[static_cast<size_t>(j)] +=
                            a[static_cast<size_t>(i)] * mw_inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
                size_t lead = 0;
                while (img[lead].is_zero()) ++lead;
                Cyc scalar = img[lead];
                Cyc inv_lead = scalar.inverse();
                Vec norm = img;
                for (auto& c : norm) c *= inv_lead;
                int target = hyperplane_index(norm);
                if (target < 0) throw error("arrangement is not W-stable");
                hyp_image_[w][h] = {target, scalar};
            }
        }
        // Orbit partition.
        int next_orbit = 0;
        for (size_t h = 0; h < nh; ++h) {
            if (hyperplanes_[h].orbit >= 0) continue;
            std::vector<int> members;
            for (size_t w = 0; w < nw; ++w) {
                int t = hyp_image_[w][h].first;
                if (hyperplanes_[static_cast<size_t>(t)].orbit < 0) {
                    hyperplanes_[static_cast<size_t>(t)].orbit = next_orbit;
                    members.push_back(t);
                }
            }
            std::sort(members.begin(), members.end());
            orbits_.push_back(std::move(members));
            ++next_orbit;
        }
    }

    void compute_delta() {
        delta_ = MPoly::one(ctx_, dim_);
        delta_star_ = MPoly::one(ctx_, dim_);
        for (const auto& h : hyperplanes_) {
            delta_ *= h.alpha_form;
            delta_star_ *= MPoly::linear_form(ctx_, h.v);
        }
    }

    // Fundamental degrees from the Molien series of C[V]^W.
    void compute_degrees() {
        int dmax = std::max(2 * order(), 8);
        auto series = molien_series(dmax);
        degrees_ = degrees_from_series(series, dim_, order());
    }

public:
    // Coefficients of Hilb(C[V]^W) = (1/|W|) sum_w 1/det(1 - t w), exact,
    // up to and including t^dmax.
    std::vector<Rat> molien_series(int dmax) const {
        std::vector<Cyc> total(static_cast<size_t>(dmax) + 1, Cyc::zero(ctx_));
        for (const auto& el : elements_) {
            // det(I - t*w) as a polynomial in t over the cyclotomic field.
            std::vector<Cyc> charpoly = det_one_minus_t(el.matrix);
            // Series inverse: b_0 = 1, b_n = -sum a_i b_{n-i}.
            std::vector<Cyc> inv(static_cast<size_t>(dmax) + 1, Cyc::zero(ctx_));
            inv[0] = Cyc::from_int(ctx_, 1);
            for (int n = 1; n <= dmax; ++n) {
                Cyc s = Cyc::zero(ctx_);
                for (int i = 1; i <= n && i < static_cast<int>(charpoly.size()); ++i)
                    s += charpoly[static_cast<size_t>(i)] * inv[static_cast<size_t>(n - i)];
                inv[static_cast<size_t>(n)] = -s;
            }
            for (int n = 0; n <= dmax; ++n) total[static_cast<size_t>(n)] += inv[static_cast<size_t>(n)];
        }
        Cyc inv_order = Cyc::from_rat(ctx_, Rat(1, order()));
        std::vector<Rat> out;
        out.reserve(static_cast<size_t>(dmax) + 1);
        for (auto& c : total) {
            Cyc v = c * inv_order;
            if (!v.is_rational()) throw error("Molien coefficient is not rational");
            out.push_back(v.rat_value());
        }
        return out;
    }

    // Greedy factorization of a truncated series as prod 1/(1 - t^{d_i}).
    static std::vector<int> degrees_from_series(std::vector<Rat> s, int count, int group_order) {
        std::vector<int> degs;
        for (int round = 0; round < count; ++round) {
            int d = 0;
            for (size_t j = 1; j < s.size(); ++j)
                if (s[j] != 0) {
                    d = static_cast<int>(j);
                    break;
                }
            if (d == 0)
                throw factorization_failed("series exhausted before finding all degrees");
            degs.push_back(d);
            // s *= (1 - t^d)
            for (size_t j = s.size(); j-- > static_cast<size_t>(d);) s[j] -= s[j - static_cast<size_t>(d)];
        }
        for (size_t j = 1; j < s.size(); ++j)
            if (s[j] != 0)
                throw factorization_failed("series is not a product of 1/(1-t^d) factors");
        long long prod = 1;
        for (int d : degs) prod *= d;
        if (prod != group_order)
            throw factorization_failed("product of degrees does not equal |W|");
        return degs;
    }

private:
    std::vector<Cyc> det_one_minus_t(const Mat& m) const {
        // Laplace expansion over the ring of univariate polynomials in t.
        int n = dim_;
        std::vector<std::vector<std::vector<Cyc>>> a(
            static_cast<size_t>(n), std::vector<std::vector<Cyc>>(static_cast<size_t>(n)));
        Cyc one = Cyc::from_int(ctx_, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Cyc> p = {i == j ? one : Cyc::zero(ctx_), -m[static_cast<size_t>(i)][static_cast<size_t>(j)]};
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(p);
            }
        std::vector<int> cols(static_cast<size_t>(n));
        std::iota(cols.begin(), cols.end(), 0);
        return det_rec(a, 0, cols);
    }

    std::vector<Cyc> det_rec(const std::vector<std::vector<std::vector<Cyc>>>& a, int row,
                             const std::vector<int>& cols) const {
        if (cols.empty()) return {Cyc::from_int(ctx_, 1)};
        std::vector<Cyc> acc = {Cyc::zero(ctx_)};
        for (size_t t = 0; t < cols.size(); ++t) {
            const auto& entry = a[static_cast<size_t>(row)][static_cast<size_t>(cols[t])];
            std::vector<int> rest;
            for (size_t u = 0; u < cols.size(); ++u)
                if (u != t) rest.push_back(cols[u]);
            std::vector<Cyc> sub = det_rec(a, row + 1, rest);
            // acc += sign * entry * sub
            bool negative = (t % 2) == 1;
            std::vector<Cyc> prod(entry.size() + sub.size() - 1, Cyc::zero(ctx_));
            for (size_t i = 0; i < entry.size(); ++i)
                for (size_t j = 0; j < sub.size(); ++j) prod[i + j] += entry[i] * sub[j];
            if (acc.size() < prod.size()) acc.resize(prod.size(), Cyc::zero(ctx_));
            for (size_t i = 0; i < prod.size(); ++i) {
                if (negative)
                    acc[i] -= prod[i];
                else
                    acc[i] += prod[i];
            }
        }
        return acc;
    }

    CycCtxPtr ctx_;
    std::string family_;
    int dim_ = 0;
    std::vector<GroupElement> elements_;
    std::vector<int> generator_idx_;
    std::vector<std::vector<int>> mul_table_;
    std::vector<int> inv_table_;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<std::vector<std::pair<int, Cyc>>> hyp_image_;
    std::vector<std::vector<int>> orbits_;
    std::vector<int> degrees_;
    MPoly delta_, delta_star_;
};

// ---------------------------------------------------------------------------
// Built-in families. G(m,p,n) covers cyclic(n) = G(n,1,1),
// symmetric(n) = G(1,1,n), dihedral I2(m) = G(m,m,2), B_n = G(2,1,n).

inline ReflectionGroup make_gmpn(int m, int p, int n, int cap = 2000) {
    if (m < 1 || p < 1 || n < 1 || m % p != 0) throw error("bad G(m,p,n) parameters");
    int conductor = (n == 1) ? m : std::lcm(m, 2);
    auto ctx = make_cyc_context(conductor);
    Cyc one = Cyc::from_int(ctx, 1);
    std::vector<Mat> gens;
    if (n >= 2) {
        for (int i = 0; i + 1 < n; ++i) {
            Mat t = identity_matrix(ctx, n);
            std::swap(t[static_cast<size_t>(i)], t[static_cast<size_t>(i + 1)]);
            gens.push_back(std::move(t));
        }
    }
    if (m > 1) {
        if (m / p > 1 || n == 1) {
            // diag(zeta_m^p, 1, ..., 1)
            Mat d = identity_matrix(ctx, n);
            Cyc zp = Cyc::root_of_unity(ctx, m);
            Cyc acc = one;
            for (int i = 0; i < p; ++i) acc *= zp;
            d[0][0] = acc;
            gens.push_back(std::move(d));
        }
        if (n >= 2 && p > 1) {
            // zeta-twisted transposition on the first two coordinates
            Mat s = identity_matrix(ctx, n);
            Cyc z = Cyc::root_of_unity(ctx, m);
            s[0][0] = Cyc::zero(ctx);
            s[1][1] = Cyc::zero(ctx);
            s[0][1] = z.inverse();
            s[1][0] = z;
            gens.push_back(std::move(s));
        }
    }
    std::ostringstream name;
    name << "G(" << m << "," << p << "," << n << ")";
    return ReflectionGroup(ctx, gens, cap, name.str());
}

inline ReflectionGroup make_cyclic(int n, int cap = 2000) { return make_gmpn(n, 1, 1, cap); }
inline ReflectionGroup make_symmetric(int n, int cap = 2000) { return make_gmpn(1, 1, n, cap); }
inline ReflectionGroup make_dihedral(int m, int cap = 2000) { return make_gmpn(m, m, 2, cap); }

// ---------------------------------------------------------------------------
// Multiplicity parameters: one vector (k_{C,0}, ..., k_{C,n_C-1}) per orbit,
// with k_{C,0} = 0 always.

class Multiplicity {
public:
    Multiplicity() = default;
    Multiplicity(const ReflectionGroup& g, std::vector<std::vector<Rat>> per_orbit)
        : k_(std::move(per_orbit)) {
        if (k_.size() != g.orbits().size()) throw error("multiplicity orbit count mismatch");
        for (size_t c = 0; c < k_.size(); ++c) {
            int nc = g.hyperplanes()[static_cast<size_t>(g.orbits()[c][0])].order;
            if (static_cast<int>(k_[c].size()) != nc)
                throw error("multiplicity length differs from n_C");
            if (k_[c][0] != 0) throw error("k_{C,0} must be 0");
        }
    }

    static Multiplicity zero(const ReflectionGroup& g) { return uniform(g, Rat(0)); }
    // k_{C,i} = value for all i >= 1.
    static Multiplicity uniform(const ReflectionGroup& g, const Rat& value) {
        std::vector<std::vector<Rat>> per;
        for (const auto& orbit : g.orbits()) {
            int nc = g.hyperplanes()[static_cast<size_t>(orbit[0])].order;
            std::vector<Rat> row(static_cast<size_t>(nc), value);
            row[0] = Rat(0);
            per.push_back(std::move(row));
        }
        return Multiplicity(g, std::move(per));
    }

    const std::vector<std::vector<Rat>>& per_orbit() const { return k_; }

    // k_{H,i} with the index read cyclically mod n_H.
    Rat at(const ReflectionGroup& g, int h, int i) const {
        const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
        int n = hp.order;
        int idx = ((i % n) + n) % n;
        return k_[static_cast<size_t>(hp.orbit)][static_cast<size_t>(idx)];
    }

    bool is_integral_nonneg() const {
        for (const auto& row : k_)
            for (const auto& r : row)
                if (!is_integer(r) || r < 0) return false;
        return true;
    }

    bool operator==(const Multiplicity& o) const { return k_ == o.k_; }

private:
    std::vector<std::vector<Rat>> k_;
};

// ---------------------------------------------------------------------------
// Group algebra CW.

class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(const CycCtxPtr& ctx) : ctx_(ctx) {}

    static GroupAlgebraElement unit(const ReflectionGroup& g) {
        GroupAlgebraElement e(g.context());
        e.add(0, Cyc::from_int(g.context(), 1));
        return e;
    }
    static GroupAlgebraElement element(const ReflectionGroup& g, int w) {
        GroupAlgebraElement e(g.context());
        e.add(w, Cyc::from_int(g.context(), 1));
        return e;
    }

    const std::map<int, Cyc>& coeffs() const { return c_; }
    const CycCtxPtr& context() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }

    void add(int w, const Cyc& coeff) {
        if (coeff.is_zero()) return;
        auto it = c_.find(w);
        if (it == c_.end()) {
            c_.emplace(w, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
        GroupAlgebraElement out = a;
        for (const auto& [w, c] : b.c_) out.add(w, c);
        return out;
    }
    friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
        GroupAlgebraElement out = a;
        for (const auto& [w, c] : b.c_) out.add(w, -c);
        return out;
    }
    friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const Cyc& s) {
        GroupAlgebraElement out(a.ctx_);
        for (const auto& [w, c] : a.c_) out.add(w, c * s);
        return out;
    }
    bool operator==(const GroupAlgebraElement& o) const { return c_ == o.c_; }

    GroupAlgebraElement convolve(const ReflectionGroup& g, const GroupAlgebraElement& o) const {
        GroupAlgebraElement out(ctx_);
        for (const auto& [a, ca] : c_)
            for (const auto& [b, cb] : o.c_) out.add(g.mul(a, b), ca * cb);
        return out;
    }

    MPoly apply(const ReflectionGroup& g, const MPoly& f) const {
        MPoly out = MPoly::zero(g.context(), g.dim());
        for (const auto& [w, c] : c_) out += g.act(w, f) * c;
        return out;
    }

private:
    CycCtxPtr ctx_;
    std::map<int, Cyc> c_;
};

// e_{H,i} = (1/n_H) sum_{w in W_H} det(w)^{-i} w.
inline GroupAlgebraElement idempotent(const ReflectionGroup& g, int h, int i) {
    const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
    GroupAlgebraElement e(g.context());
    Cyc inv_n = Cyc::from_rat(g.context(), Rat(1, hp.order));
    for (int w : hp.stabilizer) {
        Cyc d = Cyc::from_int(g.context(), 1);
        Cyc det_inv = g.det(w).inverse();
        int ii = ((i % hp.order) + hp.order) % hp.order;
        for (int t = 0; t < ii; ++t) d *= det_inv;
        e.add(w, d * inv_n);
    }
    return e;
}

// a_H(k) = sum_i n_H k_{H,i} e_{H,i}.
inline GroupAlgebraElement hyperplane_weight(const ReflectionGroup& g, const Multiplicity& k, int h) {
    const auto& hp = g.hyperplanes()[static_cast<size_t>(h)];
    GroupAlgebraElement out(g.context());
    for (int i = 0; i < hp.order; ++i) {
        Rat ki = k.at(g, h, i);
        if (ki == 0) continue;
        out = out + idempotent(g, h, i) * Cyc::from_rat(g.context(), ki * Rat(hp.order));
    }
    return out;
}

// z(k) = sum_H a_H(k); verified central against the generators.
inline GroupAlgebraElement central_element(const ReflectionGroup& g, const Multiplicity& k) {
    GroupAlgebraElement z(g.context());
    for (size_t h = 0; h < g.hyperplanes().size(); ++h)
        z = z + hyperplane_weight(g, k, static_cast<int>(h));
    for (int gen : g.generator_indices()) {
        auto ge = GroupAlgebraElement::element(g, gen);
        if (!(z.convolve(g, ge) == ge.convolve(g, z))) throw not_central();
    }
    return z;
}

// ---------------------------------------------------------------------------
// Representations of W: one matrix per group element, indexed like
// ReflectionGroup::elements().

struct WRep {
    std::string name;
    int dim = 0;
    std::vector<Mat> mats;

    Mat of(const GroupAlgebraElement& a) const {
        const CycCtxPtr& ctx = mats[0][0][0].context();
        Mat out(static_cast<size_t>(dim), Vec(static_cast<size_t>(dim), Cyc::zero(ctx)));
        for (const auto& [w, c] : a.coeffs()) out = mat_add(out, mat_scale(mats[static_cast<size_t>(w)], c));
        return out;
    }
};

inline WRep rep_trivial(const ReflectionGroup& g) {
    WRep r;
    r.name = "trivial";
    r.dim = 1;
    for (int w = 0; w < g.order(); ++w) r.mats.push_back({{Cyc::from_int(g.context(), 1)}});
    return r;
}

inline WRep rep_det(const ReflectionGroup& g) {
    WRep r;
    r.name = "det";
    r.dim = 1;
    for (int w = 0; w < g.order(); ++w) r.mats.push_back({{g.det(w)}});
    return r;
}

inline WRep rep_reflection(const ReflectionGroup& g) {
    WRep r;
    r.name = "reflection";
    r.dim = g.dim();
    for (const auto& e : g.elements()) r.mats.push_back(e.matrix);
    return r;
}

inline WRep rep_regular(const ReflectionGroup& g) {
    WRep r;
    r.name = "regular";
    r.dim = g.order();
    const CycCtxPtr& ctx = g.context();
    for (int w = 0; w < g.order(); ++w) {
        Mat m(static_cast<size_t>(g.order()), Vec(static_cast<size_t>(g.order()), Cyc::zero(ctx)));
        for (int b = 0; b < g.order(); ++b)
            m[static_cast<size_t>(g.mul(w, b))][static_cast<size_t>(b)] = Cyc::from_int(ctx, 1);
        r.mats.push_back(std::move(m));
    }
    return r;
}

// Restriction of a representation to an invariant subspace spanned by the
// given basis columns (exact solve; throws if the span is not invariant).
inline WRep rep_restrict(const ReflectionGroup& g, const WRep& rep, const std::vector<Vec>& basis,
                         const std::string& name) {
    const CycCtxPtr& ctx = g.context();
    int sub = static_cast<int>(basis.size());
    WRep out;
    out.name = name;
    out.dim = sub;
    for (int w = 0; w < g.order(); ++w) {
        Mat m(static_cast<size_t>(sub), Vec(static_cast<size_t>(sub), Cyc::zero(ctx)));
        for (int j = 0; j < sub; ++j) {
            Vec img = mat_vec(rep.mats[static_cast<size_t>(w)], basis[static_cast<size_t>(j)]);
            // Solve img = sum_i coeff_i basis_i.
            Mat sys(img.size(), Vec(static_cast<size_t>(sub), Cyc::zero(ctx)));
            for (size_t r = 0; r < img.size(); ++r)
                for (int i = 0; i < sub; ++i) sys[r][static_cast<size_t>(i)] = basis[static_cast<size_t>(i)][r];
            auto sol = solve_linear(sys, img, ctx);
            if (!sol) throw error("subspace is not invariant");
            for (int i = 0; i < sub; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*sol)[static_cast<size_t>(i)];
        }
        out.mats.push_back(std::move(m));
    }
    return out;
}

// The (n-1)-dimensional standard summand of the permutation action of S_n.
inline WRep rep_standard_symmetric(const ReflectionGroup& g) {
    const CycCtxPtr& ctx = g.context();
    std::vector<Vec> basis;
    for (int i = 0; i + 1 < g.dim(); ++i) {
        Vec b(static_cast<size_t>(g.dim()), Cyc::zero(ctx));
        b[static_cast<size_t>(i)] = Cyc::from_int(ctx, 1);
        b[static_cast<size_t>(i + 1)] = Cyc::from_int(ctx, -1);
        basis.push_back(std::move(b));
    }
    return rep_restrict(g, rep_reflection(g), basis, "standard");
}

// Scalar by which z(k) acts on an (asserted-irreducible) representation.
inline Cyc c_tau(const ReflectionGroup& g, const Multiplicity& k, const WRep& tau) {
    GroupAlgebraElement z = central_element(g, k);
    Mat m = tau.of(z);
    Cyc scalar = m[0][0];
    for (int i = 0; i < tau.dim; ++i)
        for (int j = 0; j < tau.dim; ++j) {
            const Cyc& expect = (i == j) ? scalar : Cyc::zero(g.context());
            if (!(m[static_cast<size_t>(i)][static_cast<size_t>(j)] == expect)) throw not_scalar();
        }
    return scalar;
}

// Exact spectrum of z(k) on the regular representation, as a map
// eigenvalue -> multiplicity. Candidate eigenvalues are enumerated from
// the idempotent decomposition; the multiplicities must sum to |W|.
inline std::map<Cyc, int> central_spectrum(const ReflectionGroup& g, const Multiplicity& k) {
    GroupAlgebraElement z = central_element(g, k);
    const CycCtxPtr& ctx = g.context();
    int n = g.order();
    // Left-multiplication matrix of z on CW.
    Mat lz(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Cyc::zero(ctx)));
    for (const auto& [w, c] : z.coeffs())
        for (int b = 0; b < n; ++b) lz[static_cast<size_t>(g.mul(w, b))][static_cast<size_t>(b)] += c;
    // On an irreducible tau of dimension d, each e_{H,i} contributes
    // trace m/d with m in {0,...,d}; summing over an orbit C gives the
    // eigenvalue sum_{C,i} n_C |C| k_{C,i} r_{C,i} with r_{C,i} = m/d.
    // Irreducible dimensions divide |W| and satisfy d^2 <= |W|, so the
    // candidate ratios form a finite set.
    std::vector<Rat> ratios = {Rat(0)};
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        for (int m = 1; m <= d; ++m) ratios.push_back(Rat(m, d));
    }
    std::sort(ratios.begin(), ratios.end());
    ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
    std::vector<Rat> weights;  // n_C * |C| * k_{C,i}
    for (size_t c = 0; c < g.orbits().size(); ++c) {
        int nc = g.hyperplanes()[static_cast<size_t>(g.orbits()[c][0])].order;
        int size = static_cast<int>(g.orbits()[c].size());
        for (int i = 1; i < nc; ++i)
            weights.push_back(k.per_orbit()[c][static_cast<size_t>(i)] * Rat(nc * size));
    }
    std::vector<Rat> candidates = {Rat(0)};
    for (const Rat& w : weights) {
        std::vector<Rat> next;
        for (const Rat& base : candidates)
            for (const Rat& r : ratios) next.push_back(base + w * r);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        candidates = std::move(next);
    }
    std::map<Cyc, int> spectrum;
    int total = 0;
    for (const Rat& lambda : candidates) {
        Mat m = lz;
        Cyc lc = Cyc::from_rat(ctx, lambda);
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] -= lc;
        int nullity = n - mat_rank(std::move(m));
        if (nullity > 0) {
            spectrum[lc] = nullity;
            total += nullity;
        }
    }
    if (total != n) throw error("central spectrum incomplete: candidates missed an eigenvalue");
    return spectrum;
}

}  // namespace dunkl
