#pragma once

// JSON forms of domains, paths, orbit sets and witnesses, plus CSV helpers.
//
//   domain   {"type":"ellipsoid","a":"2","b":"3"}
//            {"type":"ball","a":"1"}
//            {"type":"toric","vertices":[["0","3"],["2","0"]]}
//            {"type":"union","parts":[<domain>, ...]}
//   path     {"edges":[{"dir":[p,-q],"mult":m}, ...]}
//   orbits   {"orbits":[{"label":"g","c_tau":1,"sl":-1,"multiplicity":2,"cz":[3,5]}],
//             "linking":[[0,1],[1,0]]}
//   labels   {"labels":[{"p":1,"q":0,"multiplicity":2}, ...]}
//
// Rationals are written as "p/q" strings; integers may also be given as
// JSON numbers.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "echcap/domains.hpp"
#include "echcap/ech_index.hpp"
#include "echcap/lattice_path.hpp"
#include "echcap/spectrum.hpp"

namespace echcap {

using Json = nlohmann::ordered_json;

Rat rat_from_json(const Json& j);

Domain domain_from_json(const Json& j);
Json domain_to_json(const Domain& domain);

LatticePath path_from_json(const Json& j);
Json path_to_json(const LatticePath& path);

OrbitSet orbit_set_from_json(const Json& j);
std::vector<OrbitLabel> orbit_labels_from_json(const Json& j);

Json witness_to_json(const Witness& w);
// Compact one-line form for CSV cells.
std::string witness_text(const Witness& w);

// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Parses file contents; ParseError on malformed JSON.
Json parse_json(const std::string& text);
Domain load_domain(const std::filesystem::path& path);

// One CSV record with RFC 4180 quoting, terminated by '\n'.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace echcap
