#include "echcap/io.hpp"

#include <fstream>
#include <sstream>

#include "echcap/errors.hpp"

namespace echcap {
namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::int64_t int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::int64_t int_member(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  return int_from_json(j.at(key), key);
}

}  // namespace

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return make_rat(j.get<std::int64_t>());
  throw ParseError("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

Domain domain_from_json(const Json& j) {
  const auto type = member(j, "type");
  if (!type.is_string()) throw ParseError("domain type must be a string");
  const auto t = type.get<std::string>();
  if (t == "ellipsoid") {
    return {Ellipsoid(rat_from_json(member(j, "a")), rat_from_json(member(j, "b")))};
  }
  if (t == "ball") return {Ball(rat_from_json(member(j, "a")))};
  if (t == "toric") {
    const auto& vs = member(j, "vertices");
    if (!vs.is_array()) throw ParseError("vertices must be an array");
    std::vector<RatPoint> pts;
    for (const auto& v : vs) {
      if (!v.is_array() || v.size() != 2) throw ParseError("a vertex must be a pair [x, y]");
      pts.push_back({rat_from_json(v[0]), rat_from_json(v[1])});
    }
    return {ToricProfile::validate(std::move(pts))};
  }
  if (t == "union") {
    const auto& ps = member(j, "parts");
    if (!ps.is_array() || ps.empty()) throw ParseError("union parts must be a nonempty array");
    DisjointUnion u;
    for (const auto& p : ps) u.parts.push_back(domain_from_json(p));
    return {std::move(u)};
  }
  throw ParseError("unknown domain type \"" + t + "\"");
}

Json domain_to_json(const Domain& domain) {
  return std::visit(
      [](const auto& shape) -> Json {
        using T = std::decay_t<decltype(shape)>;
        Json j;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          j["type"] = "ellipsoid";
          j["a"] = to_string(shape.a());
          j["b"] = to_string(shape.b());
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["type"] = "ball";
          j["a"] = to_string(shape.a());
        } else if constexpr (std::is_same_v<T, ToricProfile>) {
          j["type"] = "toric";
          j["vertices"] = Json::array();
          for (const auto& v : shape.vertices()) {
            j["vertices"].push_back(Json::array({to_string(v.x), to_string(v.y)}));
          }
        } else {
          j["type"] = "union";
          j["parts"] = Json::array();
          for (const auto& p : shape.parts) j["parts"].push_back(domain_to_json(p));
        }
        return j;
      },
      domain.shape);
}

LatticePath path_from_json(const Json& j) {
  const auto& es = member(j, "edges");
  if (!es.is_array()) throw ParseError("edges must be an array");
  std::vector<PathEdge> edges;
  for (const auto& e : es) {
    const auto& dir = member(e, "dir");
    if (!dir.is_array() || dir.size() != 2) throw ParseError("dir must be a pair [p, -q]");
    std::int64_t p = int_from_json(dir[0], "dir[0]");
    std::int64_t q = -int_from_json(dir[1], "dir[1]");
    if (p < 0 || q < 0) throw PreconditionError("edge direction must be (p, -q) with p, q >= 0");
    edges.push_back({{p, q}, int_member(e, "mult", 1)});
  }
  return LatticePath::canonical(edges);
}

Json path_to_json(const LatticePath& path) {
  Json j;
  j["edges"] = Json::array();
  for (const auto& e : path.edges()) {
    Json edge;
    edge["dir"] = Json::array({e.dir.p, -e.dir.q});
    edge["mult"] = e.mult;
    j["edges"].push_back(std::move(edge));
  }
  return j;
}

OrbitSet orbit_set_from_json(const Json& j) {
  const auto& os = member(j, "orbits");
  if (!os.is_array()) throw ParseError("orbits must be an array");
  OrbitSet alpha;
  for (const auto& o : os) {
    OrbitRecord r;
    r.label = o.contains("label") ? o.at("label").get<std::string>()
                                  : "orbit" + std::to_string(alpha.orbits.size() + 1);
    r.c_tau = int_member(o, "c_tau", 0);
    r.sl = int_from_json(member(o, "sl"), "sl");
    r.multiplicity = int_member(o, "multiplicity", 1);
    std::vector<std::int64_t> cz;
    if (o.contains("cz")) {
      if (!o.at("cz").is_array()) throw ParseError("cz must be an array");
      for (const auto& c : o.at("cz")) cz.push_back(int_from_json(c, "cz"));
    }
    r.cz_of_cover = [cz](std::int64_t k) -> std::optional<std::int64_t> {
      if (k < 1 || k > static_cast<std::int64_t>(cz.size())) return std::nullopt;
      return cz[static_cast<std::size_t>(k - 1)];
    };
    alpha.orbits.push_back(std::move(r));
  }
  if (j.contains("linking")) {
    for (const auto& row : j.at("linking")) {
      std::vector<std::int64_t> r;
      for (const auto& x : row) r.push_back(int_from_json(x, "linking"));
      alpha.linking.push_back(std::move(r));
    }
  } else if (alpha.orbits.size() > 1) {
    throw ParseError("linking matrix is required for more than one orbit");
  }
  validate_orbit_set(alpha);
  return alpha;
}

std::vector<OrbitLabel> orbit_labels_from_json(const Json& j) {
  const auto& ls = member(j, "labels");
  if (!ls.is_array()) throw ParseError("labels must be an array");
  std::vector<OrbitLabel> out;
  for (const auto& l : ls) {
    out.push_back({int_from_json(member(l, "p"), "p"), int_from_json(member(l, "q"), "q"),
                   int_member(l, "multiplicity", 1)});
  }
  return out;
}

Json witness_to_json(const Witness& w) {
  return std::visit(
      [](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, OrbitPair>) {
          return Json{{"m", d.m}, {"n", d.n}};
        } else if constexpr (std::is_same_v<T, LatticePath>) {
          return path_to_json(d);
        } else {
          Json j;
          j["ks"] = d.ks;
          j["parts"] = Json::array();
          for (const auto& p : d.parts) j["parts"].push_back(witness_to_json(p));
          return j;
        }
      },
      w.data);
}

std::string witness_text(const Witness& w) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, OrbitPair>) {
          return "(" + std::to_string(d.m) + " " + std::to_string(d.n) + ")";
        } else if constexpr (std::is_same_v<T, LatticePath>) {
          std::string s;
          for (const auto& e : d.edges()) {
            if (!s.empty()) s += ' ';
            s += "(" + std::to_string(e.dir.p) + " " + std::to_string(-e.dir.q) + ")";
            if (e.mult != 1) s += "^" + std::to_string(e.mult);
          }
          return s.empty() ? "empty" : s;
        } else {
          std::string s;
          for (std::size_t i = 0; i < d.ks.size(); ++i) {
            if (i) s += " + ";
            s += std::to_string(d.ks[i]);
            if (i < d.parts.size()) s += ":" + witness_text(d.parts[i]);
          }
          return s;
        }
      },
      w.data);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Domain load_domain(const std::filesystem::path& path) {
  try {
    return domain_from_json(parse_json(read_text_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      line += f;
      continue;
    }
    line += '"';
    for (char c : f) {
      if (c == '"') line += '"';
      line += c;
    }
    line += '"';
  }
  line += '\n';
  return line;
}

}  // namespace echcap
