#include "dirnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dirnet {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

nlohmann::json network_to_json(const HostNetwork& net) {
    nlohmann::json j;
    j["vertices"] = net.vertex_count();
    j["pi"] = net.pi_values();
    auto edges = nlohmann::json::array();
    for (const auto& e : net.edges()) edges.push_back({e.u, e.v, e.c});
    j["edges"] = std::move(edges);
    j["interior"] = net.interior();
    return j;
}

HostNetwork network_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("pi") ||
        !j.contains("edges") || !j.contains("interior"))
        throw std::invalid_argument(
            "network json needs vertices, pi, edges and interior");
    const int n = j.at("vertices").get<int>();
    auto pi = j.at("pi").get<std::vector<double>>();
    std::vector<HostNetwork::Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("network json edge must be [i, j, c]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    auto interior = j.at("interior").get<std::vector<int>>();
    return HostNetwork(n, std::move(pi), std::move(edges), std::move(interior));
}

nlohmann::json group_to_json(const GroupSpec& spec) {
    nlohmann::json j;
    switch (spec.family) {
        case Family::free_abelian:
            j["family"] = "zn";
            j["n"] = spec.rank;
            break;
        case Family::heisenberg: j["family"] = "heisenberg"; break;
        case Family::tree:
            j["family"] = "tree";
            j["d"] = spec.degree;
            break;
    }
    if (spec.family != Family::tree) {
        auto measure = nlohmann::json::array();
        for (const auto& [word, p] : spec.measure) measure.push_back({word, p});
        j["measure"] = std::move(measure);
    }
    return j;
}

GroupSpec group_from_json(const nlohmann::json& j) {
    GroupSpec spec;
    const std::string family = j.at("family").get<std::string>();
    if (family == "zn") {
        spec.family = Family::free_abelian;
        spec.rank = j.at("n").get<int>();
    } else if (family == "heisenberg") {
        spec.family = Family::heisenberg;
    } else if (family == "tree") {
        spec.family = Family::tree;
        spec.degree = j.at("d").get<int>();
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }
    if (j.contains("measure")) {
        for (const auto& entry : j.at("measure")) {
            if (!entry.is_array() || entry.size() != 2)
                throw std::invalid_argument("measure entry must be [word, p]");
            spec.measure.emplace_back(entry[0].get<std::string>(),
                                      entry[1].get<double>());
        }
    } else if (spec.family != Family::tree) {
        if (spec.family == Family::free_abelian)
            spec = GroupSpec::free_abelian_uniform(spec.rank);
        else
            spec = GroupSpec::heisenberg_uniform();
    }
    validate(spec);
    return spec;
}

nlohmann::json elements_to_json(const BallNetwork& ball) {
    nlohmann::json j;
    auto elements = nlohmann::json::array();
    for (const auto& e : ball.elements) elements.push_back(e);
    j["elements"] = std::move(elements);
    j["group"] = group_to_json(ball.spec);
    if (ball.radius >= 0) j["radius"] = ball.radius;
    if (ball.origin >= 0) j["origin"] = ball.origin;
    return j;
}

std::string constants_blob(const std::map<std::string, double>& constants) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, value] : constants) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += name;
        out += "\":";
        if (std::isfinite(value))
            out += format_double(value);
        else
            out += '"' + format_double(value) + '"';
    }
    out += '}';
    return out;
}

std::string spectrum_csv(const DirichletSystem& sys) {
    std::string out = "k,lambda_k,residual\n";
    for (int i = 0; i < sys.interior_size; ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(sys.eigenvalues[i]);
        out += ',';
        out += format_double(sys.residuals[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json spectrum_json(const DirichletSystem& sys) {
    auto rows = nlohmann::json::array();
    for (int i = 0; i < sys.interior_size; ++i)
        rows.push_back({{"k", i + 1},
                        {"lambda_k", sys.eigenvalues[i]},
                        {"residual", sys.residuals[i]}});
    return nlohmann::json{{"lambda_min", sys.lambda_min}, {"spectrum", rows}};
}

namespace {

nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);  // nlohmann would serialize inf/nan as null
}

}  // namespace

std::string reports_csv(const std::string& instance_id,
                        const std::vector<InequalityReport>& reports) {
    std::string out = "instance_id,inequality,k,lhs,rhs,slack,hypothesis_ok,constants\n";
    for (const auto& r : reports) {
        out += csv_escape(instance_id);
        out += ',';
        out += r.name;
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += format_double(r.lhs);
        out += ',';
        out += format_double(r.rhs);
        out += ',';
        out += format_double(r.slack);
        out += ',';
        out += r.hypothesis_ok ? "true" : "false";
        out += ',';
        out += csv_escape(constants_blob(r.constants));
        out += '\n';
    }
    return out;
}

nlohmann::json reports_json(const std::string& instance_id,
                            const std::vector<InequalityReport>& reports) {
    auto rows = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json constants;
        for (const auto& [name, value] : r.constants) constants[name] = json_number(value);
        rows.push_back({{"instance_id", instance_id},
                        {"inequality", r.name},
                        {"k", r.k},
                        {"lhs", json_number(r.lhs)},
                        {"rhs", json_number(r.rhs)},
                        {"slack", json_number(r.slack)},
                        {"hypothesis_ok", r.hypothesis_ok},
                        {"constants", std::move(constants)}});
    }
    return rows;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace dirnet
