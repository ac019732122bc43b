#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirnet/cayley.hpp"
#include "dirnet/eigensolve.hpp"
#include "dirnet/inequalities.hpp"
#include "dirnet/network.hpp"

namespace dirnet {

// Shortest round-trip decimal representation ("inf", "-inf", "nan" for the
// non-finite values). Used by every CSV/JSON writer so that identical inputs
// produce byte-identical reports.
std::string format_double(double x);

std::string csv_escape(const std::string& field);

// Interchange format:
//   {"vertices": N, "pi": [..], "edges": [[i, j, c], ..], "interior": [..]}
// with each undirected pair listed once (i <= j; i == j is a self-loop).
// Round-trips 64-bit floats bit-exactly.
nlohmann::json network_to_json(const HostNetwork& net);
HostNetwork network_from_json(const nlohmann::json& j);

// {"family": "tree"|"zn"|"heisenberg", "d": int?, "n": int?,
//  "measure": [["word", p], ..]}
nlohmann::json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const nlohmann::json& j);

// canonical element encodings, one array per host vertex
nlohmann::json elements_to_json(const BallNetwork& ball);

// JSON object string with sorted keys, e.g. {"C_YT":1.5,"lambda_min":0}
std::string constants_blob(const std::map<std::string, double>& constants);

// k,lambda_k,residual
std::string spectrum_csv(const DirichletSystem& sys);
nlohmann::json spectrum_json(const DirichletSystem& sys);

// instance_id,inequality,k,lhs,rhs,slack,hypothesis_ok,constants
std::string reports_csv(const std::string& instance_id,
                        const std::vector<InequalityReport>& reports);
nlohmann::json reports_json(const std::string& instance_id,
                            const std::vector<InequalityReport>& reports);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dirnet
