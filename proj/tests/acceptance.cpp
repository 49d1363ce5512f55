// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Every check is exact; degree caps are stated inline.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dunkl/derham.hpp"
#include "dunkl/kz.hpp"
#include "dunkl/quasi.hpp"
#include "dunkl/serialize.hpp"

using namespace dunkl;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!pass && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

struct Instance {
    std::string name;
    ReflectionGroup group;
};

std::vector<Instance> standard_groups() {
    std::vector<Instance> out;
    for (int n = 2; n <= 6; ++n) out.push_back({"cyclic(" + std::to_string(n) + ")", make_cyclic(n)});
    for (int m = 3; m <= 6; ++m)
        out.push_back({"dihedral(" + std::to_string(m) + ")", make_dihedral(m)});
    out.push_back({"S3", make_symmetric(3)});
    out.push_back({"S4", make_symmetric(4)});
    out.push_back({"B2", make_gmpn(2, 1, 2)});
    out.push_back({"G(3,1,2)", make_gmpn(3, 1, 2)});
    return out;
}

// Deterministic "random" rational per group: fixed seed, same value on
// every run.
Rat pseudo_random_rat(std::mt19937& rng) {
    int num = 1 + static_cast<int>(rng() % 7);
    int den = 2 + static_cast<int>(rng() % 5);
    return Rat(num, den);
}

std::vector<Multiplicity> k_grid(const ReflectionGroup& g, std::mt19937& rng) {
    std::vector<Multiplicity> out;
    for (int t = 0; t <= 2; ++t) out.push_back(Multiplicity::uniform(g, Rat(t)));
    out.push_back(Multiplicity::uniform(g, pseudo_random_rat(rng)));
    return out;
}

// Equivariance over the generators (conjugation is multiplicative, so the
// generators imply the whole group) on all monomials of degree <= D.
CheckReport equivariance_on_generators(const ReflectionGroup& g, const Multiplicity& k, int D) {
    const CycCtxPtr& ctx = g.context();
    for (int d = 0; d <= D; ++d) {
        for (const auto& e : monomials_of_degree(g.dim(), d)) {
            MPoly f = MPoly::monomial(ctx, e, Cyc::from_int(ctx, 1));
            for (int w : g.generator_indices()) {
                for (int i = 0; i < g.dim(); ++i) {
                    Vec xi = coordinate_vector(ctx, g.dim(), i);
                    MPoly lhs = g.act(w, dunkl_apply(g, k, xi, g.act(g.inv(w), f)));
                    MPoly rhs = dunkl_apply(g, k, g.act_vector(w, xi), f);
                    if (!(lhs == rhs))
                        return {false, "fails on " + f.str() + " w=" + std::to_string(w)};
                }
            }
        }
    }
    return {true, ""};
}

MPoly power_sum(const ReflectionGroup& g, int j) {
    MPoly out = MPoly::zero(g.context(), g.dim());
    for (int i = 0; i < g.dim(); ++i) out += MPoly::variable(g.context(), g.dim(), i, j);
    return out;
}

HilbertReport hilbert_with_growing_cap(const ReflectionGroup& g, const Multiplicity& k, int start) {
    int cap = start;
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return qk_hilbert(g, k, cap);
        } catch (const inconclusive&) {
            cap += 8;
        }
    }
    return qk_hilbert(g, k, cap);
}

std::string run_capture(const std::string& cmd, const std::string& outfile) {
    std::string full = cmd + " > " + outfile + " 2>/dev/null";
    if (std::system(full.c_str()) != 0) return "";
    std::ifstream in(outfile);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    auto wall0 = std::chrono::steady_clock::now();
    auto groups = standard_groups();

    // 1. Pairwise commutativity of the deformed directional derivatives.
    {
        bool pass = true;
        std::string detail;
        std::mt19937 rng(12345);
        for (const auto& inst : groups) {
            for (const auto& k : k_grid(inst.group, rng)) {
                auto rep = check_commutativity(inst.group, k, 8);
                if (!rep.pass) {
                    pass = false;
                    detail = inst.name + ": " + rep.witness;
                    break;
                }
            }
            if (!pass) break;
        }
        report(1, "commutativity of the deformed derivatives (degree <= 8)", pass, detail);
    }

    // 2. Conjugation equivariance on the same monomial set.
    {
        bool pass = true;
        std::string detail;
        std::mt19937 rng(12345);
        for (const auto& inst : groups) {
            for (const auto& k : k_grid(inst.group, rng)) {
                auto rep = equivariance_on_generators(inst.group, k, 8);
                if (!rep.pass) {
                    pass = false;
                    detail = inst.name + ": " + rep.witness;
                    break;
                }
            }
            if (!pass) break;
        }
        report(2, "equivariance of the deformed derivatives (degree <= 8)", pass, detail);
    }

    // 3. Commutation relation with coordinate multiplication, plus the
    //    closed rank-one operator identity [T, x] = 1 - 2k s.
    {
        bool pass = true;
        std::string detail;
        std::mt19937 rng(12345);
        for (const auto& inst : groups) {
            for (const auto& k : k_grid(inst.group, rng)) {
                auto rep = check_cherednik_relations(inst.group, k, 6);
                if (!rep.pass) {
                    pass = false;
                    detail = inst.name + ": " + rep.witness;
                    break;
                }
            }
            if (!pass) break;
        }
        if (pass) {
            auto g = make_cyclic(2);
            auto ctx = g.context();
            Rat kv(7, 3);
            auto k = Multiplicity::uniform(g, kv);
            DiffReflOp t = dunkl_T(g, k, coordinate_vector(ctx, 1, 0));
            DiffReflOp x = DiffReflOp::from_poly(g, MPoly::variable(ctx, 1, 0));
            DiffReflOp bracket = op_sub(g, op_mul(g, t, x), op_mul(g, x, t));
            DiffReflOp expect = op_add(
                g, DiffReflOp::identity(g),
                op_scale(g, DiffReflOp::group_element(g, g.generator_indices()[0]),
                         Cyc::from_rat(ctx, -2 * kv)));
            if (!(bracket == expect)) {
                pass = false;
                detail = "rank-one operator identity";
            }
        }
        report(3, "coordinate bracket relation (degree <= 6) and the rank-one identity", pass,
               detail);
    }

    // 4. Restricted radial parts: the potential identity for the real
    //    (order-two) built-ins, and commuting conserved operators for S3.
    {
        bool pass = true;
        std::string detail;
        for (const auto& inst : groups) {
            if (!inst.group.is_coxeter()) continue;
            for (Rat c : {Rat(1), Rat(2), Rat(2, 5)}) {
                auto rep = check_cm_identity(inst.group, Multiplicity::uniform(inst.group, c));
                if (!rep.pass) {
                    pass = false;
                    detail = inst.name + ": " + rep.witness;
                    break;
                }
            }
            if (!pass) break;
        }
        if (pass) {
            auto s3 = make_symmetric(3);
            auto k = Multiplicity::uniform(s3, Rat(1));
            CMOperator c = cm_commutator(s3, k, power_sum(s3, 2), power_sum(s3, 3));
            if (!c.is_zero()) {
                pass = false;
                detail = "[L_p2, L_p3] != 0";
            }
        }
        report(4, "radial-part identity and commuting conserved operators", pass, detail);
    }

    // 5. Deformed complex: homotopy identity and square-zero with the
    //    degree-zero cross-check, total degree <= 8 (<= 6 for rank >= 3).
    {
        bool pass = true;
        std::string detail;
        std::mt19937 rng(12345);
        for (const auto& inst : groups) {
            int bound = inst.group.dim() >= 3 ? 6 : 8;
            for (const auto& k : k_grid(inst.group, rng)) {
                auto hom = check_homotopy(inst.group, k, bound);
                auto dsq = check_d_squared(inst.group, k, bound);
                if (!hom.pass || !dsq.pass) {
                    pass = false;
                    detail = inst.name + ": " + (hom.pass ? dsq.witness : hom.witness);
                    break;
                }
            }
            if (!pass) break;
        }
        report(5, "deformed complex homotopy and square-zero", pass, detail);
    }

    // 6. Central element: spectrum linear in the parameter with nonnegative
    //    integer slopes; S3 spectrum inside {0, 3k, 6k}.
    {
        bool pass = true;
        std::string detail;
        std::vector<Instance> spec_groups;
        for (const auto& inst : groups)
            if (inst.group.order() <= 18) spec_groups.push_back(inst);
        for (const auto& inst : spec_groups) {
            std::vector<std::map<Rat, int>> spectra;
            for (int t = 0; t <= 3 && pass; ++t) {
                auto spec = central_spectrum(inst.group, Multiplicity::uniform(inst.group, Rat(t)));
                std::map<Rat, int> flat;
                int total = 0;
                for (const auto& [ev, mult] : spec) {
                    if (!ev.is_rational()) {
                        pass = false;
                        detail = inst.name + ": irrational eigenvalue";
                        break;
                    }
                    flat[ev.rat_value()] += mult;
                    total += mult;
                }
                if (pass && total != inst.group.order()) {
                    pass = false;
                    detail = inst.name + ": multiplicities do not fill the regular representation";
                }
                spectra.push_back(std::move(flat));
            }
            if (!pass) break;
            for (const auto& [ev, mult] : spectra[1]) {
                if (!is_integer(ev) || ev < 0) {
                    pass = false;
                    detail = inst.name + ": slope " + ev.str() + " is not a nonnegative integer";
                    break;
                }
                for (int t = 2; t <= 3; ++t) {
                    auto it = spectra[static_cast<size_t>(t)].find(ev * t);
                    if (it == spectra[static_cast<size_t>(t)].end() || it->second != mult) {
                        pass = false;
                        detail = inst.name + ": spectrum is not linear in the parameter";
                        break;
                    }
                }
                if (!pass) break;
            }
            if (!pass) break;
        }
        if (pass) {
            auto s3 = make_symmetric(3);
            auto spec = central_spectrum(s3, Multiplicity::uniform(s3, Rat(2)));
            for (const auto& [ev, mult] : spec) {
                Rat v = ev.rat_value();
                if (v != 0 && v != 6 && v != 12) {
                    pass = false;
                    detail = "S3 eigenvalue " + v.str() + " outside {0, 3k, 6k}";
                    break;
                }
            }
        }
        report(6, "central element spectrum linear with integer slopes", pass, detail);
    }

    // 7. Intertwiner up to total degree 6 away from singular parameters;
    //    the singular rank-one case is detected.
    {
        bool pass = true;
        std::string detail;
        struct Case {
            ReflectionGroup g;
            Multiplicity k;
            std::string name;
        };
        std::vector<Case> cases;
        {
            auto z2 = make_cyclic(2);
            cases.push_back({z2, Multiplicity::uniform(z2, Rat(1)), "cyclic(2) k=1"});
            cases.push_back({z2, Multiplicity::uniform(z2, Rat(5, 2)), "cyclic(2) k=5/2"});
            auto z3 = make_cyclic(3);
            cases.push_back({z3, Multiplicity(z3, {{Rat(0), Rat(2), Rat(1, 2)}}),
                             "cyclic(3) k=(0,2,1/2)"});
            auto s3 = make_symmetric(3);
            cases.push_back({s3, Multiplicity::uniform(s3, Rat(1)), "S3 k=1"});
            auto i3 = make_dihedral(3);
            cases.push_back({i3, Multiplicity::uniform(i3, Rat(1)), "dihedral(3) k=1"});
        }
        for (const auto& c : cases) {
            auto rep = check_intertwiner(c.g, c.k, c.g.dim() >= 3 ? 5 : 6);
            if (!rep.pass) {
                pass = false;
                detail = c.name + ": " + rep.witness;
                break;
            }
        }
        if (pass) {
            auto z2 = make_cyclic(2);
            bool threw = false;
            try {
                Intertwiner s(z2, Multiplicity::uniform(z2, Rat(-1, 2)), 4);
            } catch (const singular_parameter& e) {
                threw = e.eigenvalue == "-1";
            }
            if (!threw) {
                pass = false;
                detail = "singular parameter not detected";
            }
        }
        report(7, "degree-preserving intertwiner exists and is detected singular", pass, detail);
    }

    // 8. Flatness of the logarithmic connection, including the
    //    codimension-2 residue criterion.
    {
        bool pass = true;
        std::string detail;
        auto s3 = make_symmetric(3);
        for (Rat kv : {Rat(1), Rat(3, 7)}) {
            auto rep = check_flatness(s3, Multiplicity::uniform(s3, kv),
                                      rep_standard_symmetric(s3), 3);
            if (!rep.pass) {
                pass = false;
                detail = "S3 standard: " + rep.witness;
                break;
            }
        }
        if (pass) {
            auto g312 = make_gmpn(3, 1, 2);
            auto rep = check_flatness(g312, Multiplicity::uniform(g312, Rat(1)),
                                      rep_reflection(g312), 3);
            if (!rep.pass) {
                pass = false;
                detail = "G(3,1,2) reflection: " + rep.witness;
            }
        }
        report(8, "flat connection curvature and residue criterion", pass, detail);
    }

    // 9. Quasi-invariant slices match the rank-one closed form; Hilbert
    //    numerators are nonnegative with p(1) = |W|; generator certificates.
    {
        bool pass = true;
        std::string detail;
        for (int n = 2; n <= 4 && pass; ++n) {
            auto g = make_cyclic(n);
            // All parameter vectors with entries <= 3.
            std::vector<std::vector<int>> stack = {{0}};
            while (!stack.empty() && pass) {
                auto cur = stack.back();
                stack.pop_back();
                if (static_cast<int>(cur.size()) < n) {
                    for (int v = 0; v <= 3; ++v) {
                        auto next = cur;
                        next.push_back(v);
                        stack.push_back(next);
                    }
                    continue;
                }
                std::vector<Rat> row;
                for (int v : cur) row.emplace_back(v);
                Multiplicity k(g, {row});
                for (int d = 0; d <= 12; ++d) {
                    int expect = d >= n * cur[static_cast<size_t>(d % n)] ? 1 : 0;
                    if (static_cast<int>(qk_basis(g, k, d).size()) != expect) {
                        pass = false;
                        detail = "cyclic(" + std::to_string(n) + ") slice mismatch at degree " +
                                 std::to_string(d);
                        break;
                    }
                }
            }
        }
        if (pass) {
            struct HCase {
                ReflectionGroup g;
                Multiplicity k;
                int cap;
                std::string name;
            };
            std::vector<HCase> cases;
            {
                auto z2 = make_cyclic(2);
                for (int t = 1; t <= 3; ++t)
                    cases.push_back({z2, Multiplicity::uniform(z2, Rat(t)), 2 * t + 4,
                                     "cyclic(2) k=" + std::to_string(t)});
                auto z3 = make_cyclic(3);
                cases.push_back({z3, Multiplicity(z3, {{Rat(0), Rat(1), Rat(1)}}), 10,
                                 "cyclic(3) k=(0,1,1)"});
                cases.push_back({z3, Multiplicity(z3, {{Rat(0), Rat(2), Rat(1)}}), 14,
                                 "cyclic(3) k=(0,2,1)"});
                auto s3 = make_symmetric(3);
                cases.push_back({s3, Multiplicity::uniform(s3, Rat(1)), 13, "S3 k=1"});
                cases.push_back({s3, Multiplicity::uniform(s3, Rat(2)), 19, "S3 k=2"});
                auto b2 = make_gmpn(2, 1, 2);
                cases.push_back({b2, Multiplicity::uniform(b2, Rat(1)), 14, "B2 k=1"});
                cases.push_back({b2, Multiplicity::uniform(b2, Rat(2)), 22, "B2 k=2"});
            }
            for (const auto& c : cases) {
                try {
                    HilbertReport h = hilbert_with_growing_cap(c.g, c.k, c.cap);
                    if (h.p_at_one != c.g.order()) {
                        pass = false;
                        detail = c.name + ": p(1) = " + std::to_string(h.p_at_one);
                        break;
                    }
                    int cap = c.cap;
                    while (true) {
                        try {
                            auto gens = freeness_certificate(c.g, c.k, cap);
                            if (static_cast<int>(gens.size()) != c.g.order()) {
                                pass = false;
                                detail = c.name + ": generator count " +
                                         std::to_string(gens.size());
                            }
                            break;
                        } catch (const inconclusive&) {
                            cap += 8;
                            if (cap > c.cap + 32) throw;
                        }
                    }
                    if (!pass) break;
                } catch (const inconclusive& e) {
                    pass = false;
                    detail = c.name + ": " + e.what();
                    break;
                }
            }
        }
        report(9, "quasi-invariant slices, Hilbert numerators, generator certificates", pass,
               detail);
    }

    // 10. Group-algebra-valued module: symmetrization identity, stability
    //     under the deformed derivatives, and stability of the scalar
    //     module under the restricted invariant operator.
    {
        bool pass = true;
        std::string detail;
        struct BCase {
            ReflectionGroup g;
            Multiplicity k;
            int cap;
            std::string name;
        };
        std::vector<BCase> cases;
        {
            auto z2 = make_cyclic(2);
            cases.push_back({z2, Multiplicity::uniform(z2, Rat(1)), 8, "cyclic(2) k=1"});
            auto z3 = make_cyclic(3);
            cases.push_back({z3, Multiplicity(z3, {{Rat(0), Rat(1), Rat(2)}}), 8,
                             "cyclic(3) k=(0,1,2)"});
            auto z4 = make_cyclic(4);
            cases.push_back({z4, Multiplicity(z4, {{Rat(0), Rat(1), Rat(0), Rat(2)}}), 8,
                             "cyclic(4) k=(0,1,0,2)"});
            auto i3 = make_dihedral(3);
            cases.push_back({i3, Multiplicity::uniform(i3, Rat(1)), 6, "dihedral(3) k=1"});
            auto i4 = make_dihedral(4);
            cases.push_back({i4, Multiplicity::uniform(i4, Rat(1)), 6, "dihedral(4) k=1"});
        }
        for (const auto& c : cases) {
            auto rep = check_bold_stability(c.g, c.k, c.cap);
            if (!rep.pass) {
                pass = false;
                detail = c.name + ": " + rep.witness;
                break;
            }
            MPoly sym = invariant_basis(c.g, c.g.degrees().front()).front();
            auto uk = check_uk_stability(c.g, c.k, sym, c.cap);
            if (!uk.pass) {
                pass = false;
                detail = c.name + " operator stability: " + uk.witness;
                break;
            }
        }
        if (pass) {
            // Rank-one witness: the restricted operator kills x^3 at k = 1.
            auto z2 = make_cyclic(2);
            auto k = Multiplicity::uniform(z2, Rat(1));
            CMOperator op = cm_operator(z2, k, power_sum(z2, 2));
            MPoly x3 = MPoly::variable(z2.context(), 1, 0, 3);
            if (!op.apply(z2, RatFun::from_poly(z2, x3)).is_zero()) {
                pass = false;
                detail = "L(x^3) != 0";
            }
        }
        report(10, "group-algebra-valued module stability and symmetrization", pass, detail);
    }

    // 11. Invariant theory: fundamental degrees and the parameter-zero
    //     generator certificate (coinvariant count).
    {
        bool pass = true;
        std::string detail;
        for (int n = 2; n <= 6 && pass; ++n) {
            if (make_cyclic(n).degrees() != std::vector<int>{n}) {
                pass = false;
                detail = "cyclic(" + std::to_string(n) + ") degrees";
            }
        }
        if (pass && make_symmetric(3).degrees() != std::vector<int>{1, 2, 3}) {
            pass = false;
            detail = "S3 degrees";
        }
        if (pass && make_gmpn(2, 1, 2).degrees() != std::vector<int>{2, 4}) {
            pass = false;
            detail = "B2 degrees";
        }
        if (pass) {
            for (const auto& inst : groups) {
                long long prod = 1;
                for (int d : inst.group.degrees()) prod *= d;
                if (prod != inst.group.order()) {
                    pass = false;
                    detail = inst.name + ": degree product";
                    break;
                }
            }
        }
        if (pass) {
            for (auto g : {make_cyclic(3), make_symmetric(3), make_gmpn(2, 1, 2)}) {
                int cap = 0;
                for (int d : g.degrees()) cap += d - 1;
                auto gens = freeness_certificate(g, Multiplicity::zero(g), cap + g.degrees().back());
                if (static_cast<int>(gens.size()) != g.order()) {
                    pass = false;
                    detail = "coinvariant generator count for " + g.family();
                    break;
                }
            }
        }
        report(11, "fundamental degrees and coinvariant certificates", pass, detail);
    }

    // 12. Determinism: the aggregate suite emits identical bytes for
    //     different worker counts.
    {
        std::string base = std::string(CLI_BIN) +
                           " suite --family dihedral --m 3 --k 1 --max-degree 4 --out json";
        std::string a = run_capture(base + " --jobs 1", "/tmp/acceptance_suite_a.json");
        std::string b = run_capture(base + " --jobs 4", "/tmp/acceptance_suite_b.json");
        bool pass = !a.empty() && a == b;
        report(12, "suite report bytes independent of parallelism", pass,
               pass ? "" : "outputs differ or the run failed");
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << " (" << static_cast<int>(secs) << "s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
