// Batch command-line front end for the reflection-group engine: group
// inspection, Dunkl/Calogero-Moser checks, the deformed de Rham complex,
// the flat connection, quasi-invariant modules, and an aggregate property
// suite. Exit codes: 0 pass, 1 property failure (with witness), 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include "dunkl/derham.hpp"
#include "dunkl/kz.hpp"
#include "dunkl/quasi.hpp"
#include "dunkl/serialize.hpp"

namespace {

using namespace dunkl;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string group_file;
    std::string kspec = "0";
    std::string out = "text";
    std::string action;
    std::string xi = "e1";
    std::string poly;
    std::string ptext = "p2";
    std::string qtext = "p3";
    std::string tau = "reflection";
    int n = 0, m = 0, p = 1;
    int max_degree = 6;
    int degree = 0;
    int jobs = 1;
};

ReflectionGroup build_group(const Options& opt) {
    if (!opt.group_file.empty()) {
        std::ifstream in(opt.group_file);
        if (!in) throw usage_error("cannot open group file: " + opt.group_file);
        Json j = Json::parse(in, nullptr, true, true);
        return group_from_json(j);
    }
    if (opt.family.empty()) throw usage_error("specify --family or --group");
    if (opt.family == "cyclic") {
        if (opt.n < 1) throw usage_error("--family cyclic needs --n >= 1");
        return make_cyclic(opt.n);
    }
    if (opt.family == "symmetric") {
        if (opt.n < 2) throw usage_error("--family symmetric needs --n >= 2");
        return make_symmetric(opt.n);
    }
    if (opt.family == "dihedral") {
        if (opt.m < 3) throw usage_error("--family dihedral needs --m >= 3");
        return make_dihedral(opt.m);
    }
    if (opt.family == "G") {
        if (opt.m < 1 || opt.n < 1) throw usage_error("--family G needs --m and --n");
        return make_gmpn(opt.m, opt.p, opt.n);
    }
    throw usage_error("unknown family: " + opt.family);
}

Multiplicity build_multiplicity(const ReflectionGroup& g, const Options& opt) {
    {
        std::ifstream in(opt.kspec);
        if (in) {
            Json j = Json::parse(in, nullptr, true, true);
            try {
                return multiplicity_from_json(g, j);
            } catch (const error& e) {
                throw usage_error(e.what());
            }
        }
    }
    // CSV per orbit, orbits separated by ';'. A single value per orbit is
    // shorthand for the uniform parameter (0, v, ..., v); one orbit group
    // applies to all orbits.
    std::vector<std::vector<Rat>> groups;
    std::stringstream orbits(opt.kspec);
    std::string orbit_part;
    while (std::getline(orbits, orbit_part, ';')) {
        std::vector<Rat> row;
        std::stringstream entries(orbit_part);
        std::string entry;
        while (std::getline(entries, entry, ',')) row.push_back(parse_rat(entry));
        if (row.empty()) throw usage_error("empty orbit group in --k");
        groups.push_back(std::move(row));
    }
    size_t norb = g.orbits().size();
    if (groups.size() == 1 && norb > 1) groups.resize(norb, groups[0]);
    if (groups.size() != norb)
        throw usage_error("--k has " + std::to_string(groups.size()) + " orbit groups, group has " +
                          std::to_string(norb));
    std::vector<std::vector<Rat>> per;
    for (size_t c = 0; c < norb; ++c) {
        int nc = g.hyperplanes()[static_cast<size_t>(g.orbits()[c][0])].order;
        if (groups[c].size() == 1) {
            std::vector<Rat> row(static_cast<size_t>(nc), groups[c][0]);
            row[0] = Rat(0);
            per.push_back(std::move(row));
        } else if (static_cast<int>(groups[c].size()) == nc) {
            per.push_back(groups[c]);
        } else {
            throw usage_error("orbit group " + std::to_string(c) + " needs 1 or " +
                              std::to_string(nc) + " entries");
        }
    }
    try {
        return Multiplicity(g, std::move(per));
    } catch (const error& e) {
        throw usage_error(e.what());
    }
}

Json provenance(const ReflectionGroup& g, const Multiplicity& k, const Options& opt) {
    Json out;
    Json gj;
    gj["family"] = g.family();
    gj["dim"] = g.dim();
    gj["order"] = g.order();
    gj["conductor"] = g.context()->conductor();
    out["group"] = std::move(gj);
    out["k"] = multiplicity_to_json(k)["orbits"];
    Json caps;
    caps["max_degree"] = opt.max_degree;
    if (opt.degree > 0) caps["degree"] = opt.degree;
    out["caps"] = std::move(caps);
    return out;
}

void emit(const Options& opt, const Json& report) {
    if (opt.out == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // Text rendering: flat key: value lines in report order.
    std::function<void(const std::string&, const Json&)> walk = [&](const std::string& prefix,
                                                                    const Json& j) {
        if (j.is_object()) {
            for (const auto& [key, val] : j.items())
                walk(prefix.empty() ? key : prefix + "." + key, val);
        } else {
            std::cout << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        }
    };
    walk("", report);
}

// Power-sum shorthand "pJ" or the general polynomial syntax.
MPoly parse_symbol(const ReflectionGroup& g, const std::string& text) {
    if (text.size() >= 2 && text[0] == 'p' &&
        text.find_first_not_of("0123456789", 1) == std::string::npos) {
        int j = std::stoi(text.substr(1));
        MPoly out = MPoly::zero(g.context(), g.dim());
        for (int i = 0; i < g.dim(); ++i) out += MPoly::variable(g.context(), g.dim(), i, j);
        return out;
    }
    return parse_poly(g.context(), g.dim(), text);
}

Vec parse_direction(const ReflectionGroup& g, const std::string& text) {
    if (text.size() >= 2 && text[0] == 'e') {
        int i = std::stoi(text.substr(1));
        if (i < 1 || i > g.dim()) throw usage_error("direction out of range: " + text);
        return coordinate_vector(g.context(), g.dim(), i - 1);
    }
    Vec out;
    std::stringstream ss(text);
    std::string entry;
    while (std::getline(ss, entry, ','))
        out.push_back(Cyc::from_rat(g.context(), parse_rat(entry)));
    if (static_cast<int>(out.size()) != g.dim())
        throw usage_error("direction has wrong length: " + text);
    return out;
}

WRep build_rep(const ReflectionGroup& g, const std::string& name) {
    if (name == "trivial") return rep_trivial(g);
    if (name == "det") return rep_det(g);
    if (name == "reflection") return rep_reflection(g);
    if (name == "regular") return rep_regular(g);
    if (name == "standard") {
        if (g.family().rfind("G(1,1,", 0) != 0)
            throw usage_error("--tau standard is only defined for the symmetric family");
        return rep_standard_symmetric(g);
    }
    throw usage_error("unknown representation: " + name);
}

Json check_to_json(const CheckReport& rep) {
    Json out;
    out["pass"] = rep.pass;
    if (rep.witness.empty())
        out["witness"] = nullptr;
    else
        out["witness"] = rep.witness;
    return out;
}

int finish_check(const Options& opt, Json report, const CheckReport& rep) {
    report["pass"] = rep.pass;
    report["witness"] = rep.witness.empty() ? Json() : Json(rep.witness);
    emit(opt, report);
    return rep.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

int run_group(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    if (opt.action != "info") throw usage_error("unknown group action: " + opt.action);
    Json report = provenance(g, k, opt);
    report["order"] = g.order();
    report["num_hyperplanes"] = g.hyperplanes().size();
    Json orbits = Json::array();
    for (const auto& orbit : g.orbits()) {
        Json o;
        o["size"] = orbit.size();
        o["hyperplane_order"] = g.hyperplanes()[static_cast<size_t>(orbit[0])].order;
        orbits.push_back(std::move(o));
    }
    report["orbits"] = std::move(orbits);
    report["degrees"] = g.degrees();
    report["coxeter"] = g.is_coxeter();
    emit(opt, report);
    return 0;
}

int run_dunkl(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    Json report = provenance(g, k, opt);
    if (opt.action == "apply") {
        if (opt.poly.empty()) throw usage_error("dunkl apply needs --poly");
        MPoly f = parse_poly(g.context(), g.dim(), opt.poly);
        Vec xi = parse_direction(g, opt.xi);
        MPoly out = dunkl_apply(g, k, xi, f);
        report["result"] = poly_to_json(out);
        report["result_text"] = out.str();
        emit(opt, report);
        return 0;
    }
    if (opt.action == "check-commutativity")
        return finish_check(opt, std::move(report), check_commutativity(g, k, opt.max_degree));
    if (opt.action == "equivariance")
        return finish_check(opt, std::move(report), check_equivariance(g, k, opt.max_degree));
    if (opt.action == "relations")
        return finish_check(opt, std::move(report), check_cherednik_relations(g, k, opt.max_degree));
    throw usage_error("unknown dunkl action: " + opt.action);
}

int run_cm(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    Json report = provenance(g, k, opt);
    if (opt.action == "commutator") {
        MPoly p = parse_symbol(g, opt.ptext);
        MPoly q = parse_symbol(g, opt.qtext);
        CMOperator c = cm_commutator(g, k, p, q);
        report["commutator"] = c.str(g);
        CheckReport rep{c.is_zero(), c.is_zero() ? "" : "commutator is nonzero"};
        return finish_check(opt, std::move(report), rep);
    }
    if (opt.action == "identity") {
        return finish_check(opt, std::move(report), check_cm_identity(g, k));
    }
    throw usage_error("unknown cm action: " + opt.action);
}

int run_derham(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    Json report = provenance(g, k, opt);
    if (opt.action == "check") {
        CheckReport hom = check_homotopy(g, k, opt.max_degree);
        CheckReport dsq = check_d_squared(g, k, opt.max_degree);
        report["homotopy"] = check_to_json(hom);
        report["d_squared"] = check_to_json(dsq);
        report["pass"] = hom.pass && dsq.pass;
        emit(opt, report);
        return (hom.pass && dsq.pass) ? 0 : 1;
    }
    if (opt.action == "intertwiner") {
        Json inter;
        try {
            CheckReport rep = check_intertwiner(g, k, opt.max_degree);
            inter["status"] = "ok";
            inter["eigenvalue"] = nullptr;
            inter["check"] = check_to_json(rep);
            report["intertwiner"] = std::move(inter);
            report["pass"] = rep.pass;
            emit(opt, report);
            return rep.pass ? 0 : 1;
        } catch (const singular_parameter& e) {
            inter["status"] = "singular";
            inter["eigenvalue"] = e.eigenvalue;
            report["intertwiner"] = std::move(inter);
            report["pass"] = false;
            report["witness"] = e.what();
            emit(opt, report);
            return 1;
        }
    }
    throw usage_error("unknown derham action: " + opt.action);
}

int run_kz(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    WRep tau = build_rep(g, opt.tau);
    Json report = provenance(g, k, opt);
    report["tau"] = tau.name;
    if (opt.action == "residues") {
        auto res = kz_residues(g, k, tau);
        Json mats = Json::array();
        for (const auto& b : res) mats.push_back(mat_to_json(b));
        report["residues"] = std::move(mats);
        report["equivariant"] = residues_equivariant(g, tau, res);
        emit(opt, report);
        return 0;
    }
    if (opt.action == "flatness")
        return finish_check(opt, std::move(report), check_flatness(g, k, tau, opt.max_degree));
    throw usage_error("unknown kz action: " + opt.action);
}

int run_quasi(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    if (!k.is_integral_nonneg())
        throw usage_error("quasi-invariants need an integral nonnegative --k");
    Json report = provenance(g, k, opt);
    if (opt.action == "basis") {
        auto basis = qk_basis(g, k, opt.degree);
        Json out = Json::array();
        for (const auto& f : basis) out.push_back(f.str());
        report["dimension"] = basis.size();
        report["basis"] = std::move(out);
        emit(opt, report);
        return 0;
    }
    if (opt.action == "hilbert") {
        HilbertReport h = qk_hilbert(g, k, opt.max_degree);
        report["dims"] = h.dims;
        report["numerator"] = h.numerator_str();
        report["numerator_coefficients"] = h.numerator;
        report["p_at_one"] = h.p_at_one;
        report["pass"] = true;
        emit(opt, report);
        return 0;
    }
    if (opt.action == "freeness") {
        auto gens = freeness_certificate(g, k, opt.max_degree);
        Json out = Json::array();
        for (const auto& f : gens) {
            Json e;
            e["degree"] = f.total_degree() < 0 ? 0 : f.total_degree();
            e["poly"] = f.str();
            out.push_back(std::move(e));
        }
        report["generators"] = std::move(out);
        report["rank"] = gens.size();
        report["pass"] = true;
        emit(opt, report);
        return 0;
    }
    if (opt.action == "ak") {
        Multiplicity kp = ak_compute(g, k, opt.max_degree);
        report["k_prime"] = multiplicity_to_json(kp)["orbits"];
        report["pass"] = true;
        emit(opt, report);
        return 0;
    }
    if (opt.action == "bold") {
        auto slice = bold_qk_basis(g, k, opt.degree);
        Json out = Json::array();
        for (const auto& phi : slice) {
            Json comp = Json::array();
            for (const auto& f : phi) comp.push_back(f.str());
            out.push_back(std::move(comp));
        }
        report["dimension"] = slice.size();
        report["basis"] = std::move(out);
        emit(opt, report);
        return 0;
    }
    if (opt.action == "stability") {
        MPoly p = parse_symbol(g, opt.ptext);
        CheckReport bold = check_bold_stability(g, k, std::min(opt.max_degree, 6));
        CheckReport uk = check_uk_stability(g, k, p, opt.max_degree);
        report["bold"] = check_to_json(bold);
        report["uk"] = check_to_json(uk);
        report["pass"] = bold.pass && uk.pass;
        emit(opt, report);
        return (bold.pass && uk.pass) ? 0 : 1;
    }
    throw usage_error("unknown quasi action: " + opt.action);
}

// Aggregate property suite: a fixed list of named checks, evaluated
// possibly in parallel, assembled in a fixed order so the report bytes do
// not depend on the thread count.
int run_suite(const Options& opt) {
    ReflectionGroup g = build_group(opt);
    Multiplicity k = build_multiplicity(g, opt);
    int d = opt.max_degree;

    std::vector<std::pair<std::string, std::function<Json()>>> tasks;
    tasks.emplace_back("commutativity",
                       [&] { return check_to_json(check_commutativity(g, k, d)); });
    tasks.emplace_back("equivariance", [&] { return check_to_json(check_equivariance(g, k, d)); });
    tasks.emplace_back("cherednik_relations",
                       [&] { return check_to_json(check_cherednik_relations(g, k, std::min(d, 5))); });
    tasks.emplace_back("central_spectrum", [&] {
        auto spec = central_spectrum(g, k);
        Json out;
        Json eigs = Json::array();
        int total = 0;
        for (const auto& [ev, mult] : spec) {
            Json e = Json::array();
            e.push_back(ev.str());
            e.push_back(mult);
            eigs.push_back(std::move(e));
            total += mult;
        }
        out["eigenvalues"] = std::move(eigs);
        out["pass"] = total == g.order();
        return out;
    });
    tasks.emplace_back("derham_homotopy",
                       [&] { return check_to_json(check_homotopy(g, k, std::min(d, 6))); });
    tasks.emplace_back("derham_d_squared",
                       [&] { return check_to_json(check_d_squared(g, k, std::min(d, 6))); });
    tasks.emplace_back("intertwiner", [&]() -> Json {
        Json out;
        try {
            CheckReport rep = check_intertwiner(g, k, std::min(d, 4));
            out["status"] = "ok";
            out["pass"] = rep.pass;
            out["witness"] = rep.witness.empty() ? Json() : Json(rep.witness);
        } catch (const singular_parameter& e) {
            out["status"] = "singular";
            out["eigenvalue"] = e.eigenvalue;
            out["pass"] = true;  // detection is the expected behavior
        }
        return out;
    });
    tasks.emplace_back("kz_flatness", [&] {
        return check_to_json(check_flatness(g, k, rep_reflection(g), std::min(d, 3)));
    });
    if (g.is_coxeter())
        tasks.emplace_back("cm_identity", [&] { return check_to_json(check_cm_identity(g, k)); });
    if (k.is_integral_nonneg()) {
        tasks.emplace_back("quasi_hilbert", [&]() -> Json {
            Json out;
            try {
                HilbertReport h = qk_hilbert(g, k, d);
                out["status"] = "ok";
                out["numerator"] = h.numerator_str();
                out["p_at_one"] = h.p_at_one;
                out["pass"] = h.p_at_one == g.order();
            } catch (const inconclusive& e) {
                out["status"] = "inconclusive";
                out["detail"] = e.what();
                out["pass"] = true;  // not a counterexample, just a short cap
            }
            return out;
        });
        tasks.emplace_back("quasi_stability", [&] {
            return check_to_json(check_bold_stability(g, k, std::min(d, 4)));
        });
    }

    std::vector<Json> results(tasks.size());
    if (opt.jobs > 1) {
        std::vector<std::future<Json>> futs;
        for (auto& [name, fn] : tasks) futs.push_back(std::async(std::launch::async, fn));
        for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i].second();
    }

    Json report = provenance(g, k, opt);
    bool all = true;
    Json checks;
    for (size_t i = 0; i < tasks.size(); ++i) {
        if (results[i].contains("pass") && !results[i]["pass"].get<bool>()) all = false;
        checks[tasks[i].first] = std::move(results[i]);
    }
    report["checks"] = std::move(checks);
    report["pass"] = all;
    emit(opt, report);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact engine for reflection arrangements: Dunkl operators, "
                 "Calogero-Moser operators, the deformed de Rham complex, flat "
                 "connections, and quasi-invariant modules"};
    app.require_subcommand(1);

    Options opt;
    std::map<std::string, int (*)(const Options&)> handlers = {
        {"group", run_group}, {"dunkl", run_dunkl}, {"cm", run_cm},     {"derham", run_derham},
        {"kz", run_kz},       {"quasi", run_quasi}, {"suite", run_suite}};

    auto add_common = [&](CLI::App* sub, bool p_is_symbol) {
        sub->add_option("--family", opt.family, "Built-in family: cyclic|symmetric|dihedral|G");
        sub->add_option("--n", opt.n, "Rank parameter n");
        sub->add_option("--m", opt.m, "Order parameter m");
        // "--p" names the invariant symbol on the operator subcommands.
        sub->add_option(p_is_symbol ? "--divisor" : "--p", opt.p,
                        "Divisor parameter p for G(m,p,n)");
        sub->add_option("--group", opt.group_file, "Group description file (JSON)");
        sub->add_option("--k", opt.kspec, "Multiplicity: CSV per orbit (';'-separated) or file");
        sub->add_option("--max-degree", opt.max_degree, "Degree cap for checks");
        sub->add_option("--out", opt.out, "Output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* sub_group = app.add_subcommand("group", "Group structure queries");
    sub_group->add_option("action", opt.action, "info")->required();
    CLI::App* sub_dunkl = app.add_subcommand("dunkl", "Dunkl operator computations and checks");
    sub_dunkl->add_option("action", opt.action, "apply|check-commutativity|equivariance|relations")
        ->required();
    sub_dunkl->add_option("--xi", opt.xi, "Direction: eI or CSV coordinates");
    sub_dunkl->add_option("--poly", opt.poly, "Polynomial, e.g. \"x1^2*x2 - 3/2*x3\"");
    CLI::App* sub_cm = app.add_subcommand("cm", "Restricted invariant (Calogero-Moser) operators");
    sub_cm->add_option("action", opt.action, "commutator|identity")->required();
    sub_cm->add_option("--p", opt.ptext, "Invariant symbol (pJ shorthand or polynomial)");
    sub_cm->add_option("--q", opt.qtext, "Second invariant symbol");
    CLI::App* sub_derham = app.add_subcommand("derham", "Deformed de Rham complex checks");
    sub_derham->add_option("action", opt.action, "check|intertwiner")->required();
    CLI::App* sub_kz = app.add_subcommand("kz", "Flat connection residues and curvature");
    sub_kz->add_option("action", opt.action, "residues|flatness")->required();
    sub_kz->add_option("--tau", opt.tau, "Representation: trivial|det|reflection|standard|regular");
    CLI::App* sub_quasi = app.add_subcommand("quasi", "Quasi-invariant modules");
    sub_quasi->add_option("action", opt.action, "basis|hilbert|freeness|ak|bold|stability")
        ->required();
    sub_quasi->add_option("--degree", opt.degree, "Single degree for basis/bold");
    sub_quasi->add_option("--p", opt.ptext, "Invariant symbol for stability");
    CLI::App* sub_suite = app.add_subcommand("suite", "Aggregate property suite");
    sub_suite->add_option("--jobs", opt.jobs, "Worker threads (output is identical for any value)");

    for (CLI::App* sub : {sub_group, sub_dunkl, sub_derham, sub_kz, sub_suite})
        add_common(sub, false);
    for (CLI::App* sub : {sub_cm, sub_quasi}) add_common(sub, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        for (const auto& [name, fn] : handlers)
            if (app.got_subcommand(name)) return fn(opt);
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
