// dirnet: build finite pieces of Cayley and general networks, compute their
// Dirichlet spectra, and verify universal eigenvalue inequalities with signed
// slack reports.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirnet/cayley.hpp"
#include "dirnet/eigensolve.hpp"
#include "dirnet/inequalities.hpp"
#include "dirnet/io.hpp"
#include "dirnet/network.hpp"
#include "dirnet/randomnet.hpp"

namespace {

using namespace dirnet;

const std::set<std::string> kCheckNames = {
    "all",          "main-bound", "yang",   "yang-type", "abelian-quotient",
    "lambda2",      "yang-second", "hile-protter", "ppw",  "ratio",
    "recursion",    "trace"};

struct Options {
    std::string group;
    std::string group_json;
    std::string network;
    bool random = false;
    int vertices = 8;
    double density = 0.5;
    std::uint64_t seed = 1;
    int radius = -1;
    std::string box;
    std::string interior;
    std::string alpha = "auto";
    std::string k_spec = "all";
    double delta = 0.2;
    std::vector<std::string> constants;
    std::vector<std::string> checks;
    std::string format = "csv";
    std::string out;
    std::string dump_network;
    std::string config;
};

struct Instance {
    std::string id;
    HostNetwork net;
    std::optional<BallNetwork> ball;
    double lambda_min = 0.0;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!token.empty()) out.push_back(std::stoi(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    return out;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::string token;
    for (char ch : text + "x") {
        if (ch == 'x' || ch == 'X') {
            if (!token.empty()) dims.push_back(std::stoi(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    return dims;
}

std::string basename_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::uint64_t fnv1a(const std::vector<int>& values) {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : values) {
        for (int byte = 0; byte < 4; ++byte) {
            h ^= (static_cast<std::uint32_t>(v) >> (8 * byte)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

GroupSpec parse_group_shorthand(const std::string& text) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (family == "tree") return GroupSpec::tree(std::stoi(arg));
    if (family == "zn") return GroupSpec::free_abelian_uniform(std::stoi(arg));
    if (family == "heisenberg") return GroupSpec::heisenberg_uniform();
    throw std::invalid_argument("unknown group shorthand: " + text +
                                " (expected tree:D, zn:N or heisenberg)");
}

std::map<std::string, double> parse_constants(const std::vector<std::string>& list) {
    std::map<std::string, double> out;
    for (const auto& entry : list) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--constant expects NAME=VALUE, got " + entry);
        out[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
    }
    return out;
}

void apply_config(Options& opts, const std::map<std::string, bool>& given) {
    if (opts.config.empty()) return;
    const auto j = nlohmann::json::parse(read_text_file(opts.config));
    auto set_if_absent = [&](const char* key, auto& target) {
        if (!j.contains(key) || given.count(key)) return;
        using T = std::decay_t<decltype(target)>;
        target = j.at(key).get<T>();
    };
    set_if_absent("network", opts.network);
    set_if_absent("random", opts.random);
    set_if_absent("vertices", opts.vertices);
    set_if_absent("density", opts.density);
    set_if_absent("seed", opts.seed);
    set_if_absent("radius", opts.radius);
    set_if_absent("alpha", opts.alpha);
    set_if_absent("delta", opts.delta);
    set_if_absent("format", opts.format);
    set_if_absent("out", opts.out);
    set_if_absent("dump_network", opts.dump_network);
    if (j.contains("group") && !given.count("group")) {
        if (j.at("group").is_string())
            opts.group = j.at("group").get<std::string>();
        else {
            write_text_file(opts.config + ".group.tmp.json", j.at("group").dump());
            opts.group_json = opts.config + ".group.tmp.json";
        }
    }
    if (j.contains("box") && !given.count("box")) {
        if (j.at("box").is_string())
            opts.box = j.at("box").get<std::string>();
        else {
            std::string text;
            for (const auto& d : j.at("box"))
                text += (text.empty() ? "" : "x") + std::to_string(d.get<int>());
            opts.box = text;
        }
    }
    if (j.contains("interior") && !given.count("interior")) {
        std::string text;
        for (const auto& v : j.at("interior"))
            text += (text.empty() ? "" : ",") + std::to_string(v.get<int>());
        opts.interior = text;
    }
    if (j.contains("k") && !given.count("k")) {
        if (j.at("k").is_string())
            opts.k_spec = j.at("k").get<std::string>();
        else {
            std::string text;
            for (const auto& v : j.at("k"))
                text += (text.empty() ? "" : ",") + std::to_string(v.get<int>());
            opts.k_spec = text;
        }
    }
    if (j.contains("constants") && !given.count("constant"))
        for (const auto& [name, value] : j.at("constants").items())
            opts.constants.push_back(name + "=" + format_double(value.get<double>()));
    if (j.contains("inequalities") && opts.checks.empty())
        for (const auto& c : j.at("inequalities"))
            opts.checks.push_back(c.get<std::string>());
}

Instance build_instance(const Options& opts) {
    if (!opts.network.empty()) {
        auto net = network_from_json(nlohmann::json::parse(read_text_file(opts.network)));
        return Instance{"network:" + basename_of(opts.network), std::move(net),
                        std::nullopt, 0.0};
    }
    if (opts.random) {
        auto net = random_network(opts.vertices, opts.seed, opts.density);
        return Instance{"random:v=" + std::to_string(opts.vertices) +
                            ":seed=" + std::to_string(opts.seed) +
                            ":density=" + format_double(opts.density),
                        std::move(net), std::nullopt, 0.0};
    }
    if (opts.group.empty() && opts.group_json.empty())
        throw std::invalid_argument("need one of --group, --group-json, --network, --random");

    GroupSpec spec =
        !opts.group_json.empty()
            ? group_from_json(nlohmann::json::parse(read_text_file(opts.group_json)))
            : parse_group_shorthand(opts.group);
    validate(spec);

    BallNetwork ball = [&] {
        if (!opts.box.empty()) return build_box(spec, parse_dims(opts.box));
        if (opts.radius < 0)
            throw std::invalid_argument("need --radius (or --box for zn groups)");
        return build_ball(spec, opts.radius);
    }();
    std::string id = spec.id();
    id += opts.box.empty() ? ":r=" + std::to_string(opts.radius) : ":box=" + opts.box;
    if (!opts.interior.empty()) {
        const auto subset = parse_int_list(opts.interior);
        ball = with_interior(ball, subset);
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(subset)));
        id += ":sub=" + std::string(buf);
    }
    const double lmin = lambda_min(spec);
    HostNetwork net = ball.host;
    return Instance{std::move(id), std::move(net), std::move(ball), lmin};
}

void maybe_dump_network(const Options& opts, const Instance& inst) {
    if (opts.dump_network.empty()) return;
    write_text_file(opts.dump_network, network_to_json(inst.net).dump() + "\n");
    if (inst.ball)
        write_text_file(opts.dump_network + ".elements.json",
                        elements_to_json(*inst.ball).dump() + "\n");
}

void emit(const Options& opts, const std::string& content) {
    if (opts.out.empty())
        std::cout << content;
    else
        write_text_file(opts.out, content);
}

std::vector<int> resolve_k_range(const Options& opts, int n) {
    std::vector<int> ks;
    if (opts.k_spec == "all") {
        for (int k = 1; k < n; ++k) ks.push_back(k);
    } else {
        ks = parse_int_list(opts.k_spec);
        for (int k : ks)
            if (k < 1 || k >= n)
                throw std::invalid_argument("k out of range: " + std::to_string(k));
    }
    if (ks.empty()) throw std::invalid_argument("empty k range (interior too small?)");
    return ks;
}

TestFunction resolve_alpha(const Options& opts, const Instance& inst) {
    if (opts.alpha == "auto") {
        if (inst.ball) {
            if (inst.ball->spec.family == Family::tree) return busemann(*inst.ball);
            try {
                return homomorphism_cocycle(*inst.ball);
            } catch (const std::invalid_argument&) {
                // non-basis measure: fall through to a random test function
            }
        }
        return random_test_function(inst.net, 1, opts.seed * 977 + 13);
    }
    if (opts.alpha == "cocycle") return homomorphism_cocycle(*inst.ball);
    if (opts.alpha == "busemann") return busemann(*inst.ball);
    if (opts.alpha.rfind("random:", 0) == 0)
        return random_test_function(inst.net, std::stoi(opts.alpha.substr(7)),
                                    opts.seed * 977 + 13);
    throw std::invalid_argument("unknown --alpha: " + opts.alpha);
}

// Family constants, overridable through --constant NAME=VAL. Returns nullopt
// when the instance carries no natural value for the name.
struct Constants {
    std::map<std::string, double> overrides;
    const Instance* inst;

    std::optional<double> get(const std::string& name) const {
        if (auto it = overrides.find(name); it != overrides.end()) return it->second;
        if (!inst->ball) return std::nullopt;
        const auto& spec = inst->ball->spec;
        try {
            if (name == "C_Y") return default_yang_constant(spec);
            if (name == "C_YT") return default_yang_type_constant(spec);
            if (name == "eps") return cocycle_epsilon(spec);
            if (name == "mu_max") return cocycle_mu_max(spec);
            if (name == "theta")
                return spec.family == Family::tree ? default_yang_type_constant(spec)
                                                   : default_yang_constant(spec);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        return std::nullopt;
    }

    double require(const std::string& name) const {
        if (auto v = get(name)) return *v;
        throw std::invalid_argument("no value for constant " + name +
                                    " on this instance; pass --constant " + name +
                                    "=VAL");
    }
};

int run_spectrum(const Options& opts) {
    const auto inst = build_instance(opts);
    maybe_dump_network(opts, inst);
    const auto consts = Constants{parse_constants(opts.constants), &inst};
    const double lmin = consts.get("lambda_min").value_or(inst.lambda_min);
    const auto sys = dirichlet_system(inst.net, lmin);
    emit(opts, opts.format == "json" ? spectrum_json(sys).dump() + "\n"
                                     : spectrum_csv(sys));
    return 0;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& requested,
                                       const Constants& consts, int n) {
    std::vector<std::string> names = requested.empty()
                                         ? std::vector<std::string>{"all"}
                                         : requested;
    if (names.size() == 1 && names[0] == "all") {
        names = {"main-bound", "trace"};
        if (consts.get("C_Y")) names.push_back("yang");
        if (consts.get("C_YT")) {
            names.push_back("yang-type");
            if (n >= 2) names.push_back("lambda2");
            names.insert(names.end(), {"yang-second", "hile-protter", "ppw", "ratio"});
        }
        if (consts.get("eps") && consts.get("mu_max"))
            names.push_back("abelian-quotient");
        if (consts.get("theta")) names.push_back("recursion");
    }
    return names;
}

int run_verify(const Options& opts) {
    const auto inst = build_instance(opts);
    maybe_dump_network(opts, inst);
    const auto consts = Constants{parse_constants(opts.constants), &inst};
    const double lmin = consts.get("lambda_min").value_or(inst.lambda_min);
    const auto sys = dirichlet_system(inst.net, lmin);
    const auto names = expand_checks(opts.checks, consts, sys.interior_size);

    std::vector<InequalityReport> reports;
    std::optional<TestFunction> alpha;
    auto get_alpha = [&]() -> const TestFunction& {
        if (!alpha) alpha = resolve_alpha(opts, inst);
        return *alpha;
    };
    std::optional<std::vector<int>> k_range;
    auto ks_of = [&]() -> const std::vector<int>& {
        if (!k_range) k_range = resolve_k_range(opts, sys.interior_size);
        return *k_range;
    };

    for (const auto& name : names) {
        if (name == "main-bound") {
            for (int k : ks_of()) reports.push_back(main_bound(inst.net, sys, get_alpha(), k));
        } else if (name == "yang") {
            const double cy = consts.require("C_Y");
            for (int k : ks_of()) reports.push_back(yang_check(sys, cy, k));
        } else if (name == "yang-type") {
            const double cyt = consts.require("C_YT");
            for (int k : ks_of()) reports.push_back(yang_type_check(sys, cyt, k));
        } else if (name == "abelian-quotient") {
            const double eps = consts.require("eps");
            const double mu_max = consts.require("mu_max");
            for (int k : ks_of())
                reports.push_back(abelian_quotient_check(sys, eps, mu_max, k));
        } else if (name == "lambda2") {
            reports.push_back(lambda2_bound(sys, consts.require("C_YT")));
        } else if (name == "yang-second") {
            const double cyt = consts.require("C_YT");
            for (int k : ks_of()) reports.push_back(yang_second_bound(sys, cyt, k));
        } else if (name == "hile-protter") {
            const double cyt = consts.require("C_YT");
            for (int k : ks_of()) reports.push_back(hile_protter_check(sys, cyt, k));
        } else if (name == "ppw") {
            const double cyt = consts.require("C_YT");
            for (int k : ks_of()) reports.push_back(ppw_bound(sys, cyt, k));
        } else if (name == "ratio") {
            const double cyt = consts.require("C_YT");
            const double delta = consts.get("delta").value_or(opts.delta);
            for (int k : ks_of()) reports.push_back(ratio_bound(sys, cyt, delta, k));
        } else if (name == "recursion") {
            const double theta = consts.require("theta");
            std::vector<double> shifted(sys.eigenvalues);
            for (auto& v : shifted) v -= sys.lambda_min;
            const auto states = recursion_check(shifted, theta);
            for (std::size_t k = 0; k + 1 < states.size(); ++k) {
                InequalityReport r;
                r.name = "recursion";
                r.k = states[k].k;
                r.lhs = states[k + 1].F;
                r.rhs = states[k].cascade_slack + states[k + 1].F;
                r.slack = states[k].cascade_slack;
                r.hypothesis_ok = states[k].hyp_ok;
                r.holds = states[k].cascade_ok;
                r.constants = {{"theta", theta}, {"lambda_min", sys.lambda_min}};
                reports.push_back(std::move(r));
            }
        } else if (name == "trace") {
            reports.push_back(trace_check(sys, inst.net));
        } else {
            throw std::invalid_argument("unknown inequality: " + name);
        }
    }

    emit(opts, opts.format == "json" ? reports_json(inst.id, reports).dump() + "\n"
                                     : reports_csv(inst.id, reports));

    int gated = 0;
    int passed = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    int min_k = 0;
    for (const auto& r : reports) {
        if (!r.hypothesis_ok) continue;
        ++gated;
        if (r.holds) ++passed;
        if (r.slack < min_slack) {
            min_slack = r.slack;
            min_k = r.k;
        }
    }
    auto& summary = opts.out.empty() ? std::cerr : std::cout;
    if (passed == gated) {
        summary << "PASS " << passed << "/" << gated << "\n";
        return 0;
    }
    summary << "FAIL " << passed << "/" << gated << " (min slack "
            << format_double(min_slack) << " at k=" << min_k << ")\n";
    return 1;
}

int run_bounds(const Options& opts) {
    const auto inst = build_instance(opts);
    maybe_dump_network(opts, inst);
    const auto consts = Constants{parse_constants(opts.constants), &inst};
    const double lmin = consts.get("lambda_min").value_or(inst.lambda_min);
    const auto sys = dirichlet_system(inst.net, lmin);
    const double cyt = consts.require("C_YT");
    const double delta = consts.get("delta").value_or(opts.delta);

    const bool has_family_slack =
        inst.ball && (inst.ball->spec.family == Family::tree ||
                      (consts.get("eps") && consts.get("mu_max")));

    std::string csv = "k,lambda_kp1,lambda2,yang_second,ppw,ratio,family_slack\n";
    int ratio_gated = 0;
    for (int k = 1; k < sys.interior_size; ++k) {
        csv += std::to_string(k);
        csv += ',';
        csv += format_double(sys.eigenvalues[k]);
        csv += ',';
        if (k == 1) {
            const auto r = lambda2_bound(sys, cyt);
            if (r.hypothesis_ok) csv += format_double(r.rhs + sys.lambda_min);
        }
        csv += ',';
        if (const auto r = yang_second_bound(sys, cyt, k); r.hypothesis_ok)
            csv += format_double(r.rhs + sys.lambda_min);
        csv += ',';
        if (const auto r = ppw_bound(sys, cyt, k); r.hypothesis_ok)
            csv += format_double(sys.eigenvalues[k - 1] + r.rhs);
        csv += ',';
        if (const auto r = ratio_bound(sys, cyt, delta, k); r.hypothesis_ok) {
            csv += format_double(r.rhs + sys.lambda_min);
            ++ratio_gated;
        }
        csv += ',';
        if (has_family_slack) {
            const auto r = inst.ball->spec.family == Family::tree
                               ? yang_type_check(sys, cyt, k)
                               : abelian_quotient_check(sys, consts.require("eps"),
                                                        consts.require("mu_max"), k);
            csv += format_double(r.slack);
        }
        csv += '\n';
    }
    if (ratio_gated == 0)
        std::cerr << "warning: delta=" << format_double(delta)
                  << " gates out every k (lambda_1 already above 1 - delta)\n";
    emit(opts, csv);
    return 0;
}

int run_audit(const Options& opts) {
    const auto inst = build_instance(opts);
    maybe_dump_network(opts, inst);
    const auto consts = Constants{parse_constants(opts.constants), &inst};
    const double lmin = consts.get("lambda_min").value_or(inst.lambda_min);
    const auto sys = dirichlet_system(inst.net, lmin);
    const auto ks = resolve_k_range(opts, sys.interior_size);
    const auto alpha = resolve_alpha(opts, inst);

    std::string csv =
        "k,a_sym_err,b_rel_err,phi_orth_err,norm_split_err,z_plus_y_err,passed\n";
    bool all_ok = true;
    for (int k : ks) {
        const auto ps = proof_identities_audit(inst.net, sys, alpha, k);
        const bool ok = ps.within_tolerances();
        all_ok = all_ok && ok;
        csv += std::to_string(k);
        csv += ',';
        csv += format_double(ps.a_sym_err);
        csv += ',';
        csv += format_double(ps.b_rel_err);
        csv += ',';
        csv += format_double(ps.phi_orth_err);
        csv += ',';
        csv += format_double(ps.norm_split_err);
        csv += ',';
        csv += format_double(ps.z_plus_y_err);
        csv += ',';
        csv += ok ? "true" : "false";
        csv += '\n';
    }
    emit(opts, csv);
    auto& summary = opts.out.empty() ? std::cerr : std::cout;
    summary << (all_ok ? "PASS" : "FAIL") << " audit over " << ks.size()
            << " indices\n";
    return all_ok ? 0 : 1;
}

void add_common_options(CLI::App* cmd, Options& opts) {
    cmd->add_option("--group", opts.group, "family shorthand: tree:D, zn:N, heisenberg");
    cmd->add_option("--group-json", opts.group_json, "group spec JSON file");
    cmd->add_option("--network", opts.network, "network JSON file");
    cmd->add_flag("--random", opts.random, "seeded random network instance");
    cmd->add_option("--vertices", opts.vertices, "random network size");
    cmd->add_option("--density", opts.density, "random network edge density");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--radius", opts.radius, "ball radius");
    cmd->add_option("--box", opts.box, "zn box dims, e.g. 6x6");
    cmd->add_option("--interior", opts.interior, "comma-separated interior subset");
    cmd->add_option("--constant", opts.constants,
                    "override a constant, NAME=VAL (C_Y, C_YT, eps, mu_max, "
                    "lambda_min, theta, delta)");
    cmd->add_option("--format", opts.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out, "output path (default stdout)");
    cmd->add_option("--dump-network", opts.dump_network,
                    "write the built network JSON (plus .elements.json for balls)");
    cmd->add_option("--config", opts.config, "JSON config with defaults");
}

std::map<std::string, bool> given_flags(CLI::App* cmd) {
    std::map<std::string, bool> given;
    for (const auto* opt : cmd->get_options())
        if (opt->count() > 0 && !opt->get_lnames().empty())
            given[opt->get_lnames().front()] = true;
    return given;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet spectra and universal eigenvalue inequalities on networks"};
    app.require_subcommand(1);

    Options opts;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of an instance");
    add_common_options(spectrum, opts);

    auto* verify = app.add_subcommand("verify", "run inequality checkers");
    add_common_options(verify, opts);
    verify->add_option("checks", opts.checks, "inequalities to run (default: all)");
    verify->add_option("--alpha", opts.alpha,
                       "test function: auto | cocycle | busemann | random:M");
    verify->add_option("--k", opts.k_spec, "all or comma-separated indices");
    verify->add_option("--delta", opts.delta, "gate for the ratio bound");

    auto* bounds = app.add_subcommand("bounds", "per-k upper bounds next to the spectrum");
    add_common_options(bounds, opts);
    bounds->add_option("--delta", opts.delta, "gate for the ratio bound");

    auto* audit = app.add_subcommand("audit", "numerical audit of the bound derivation");
    add_common_options(audit, opts);
    audit->add_option("--alpha", opts.alpha,
                      "test function: auto | cocycle | busemann | random:M");
    audit->add_option("--k", opts.k_spec, "all or comma-separated indices");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config(opts, given_flags(active));
        for (const auto& name : opts.checks)
            if (!kCheckNames.count(name))
                throw std::invalid_argument("unknown inequality: " + name);
        if (spectrum->parsed()) return run_spectrum(opts);
        if (verify->parsed()) return run_verify(opts);
        if (bounds->parsed()) return run_bounds(opts);
        if (audit->parsed()) return run_audit(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
