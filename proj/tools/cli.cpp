#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "echcap/dynamics.hpp"
#include "echcap/ech_index.hpp"
#include "echcap/errors.hpp"
#include "echcap/io.hpp"
#include "echcap/spectrum.hpp"

#ifndef ECHCAP_VERSION
#define ECHCAP_VERSION "0.0.0"
#endif

namespace echcap::cli {
namespace {

struct Cell {
  std::string text;
  Json json;
};

Cell text_cell(std::string s) {
  Json j = s;
  return {std::move(s), std::move(j)};
}

Cell int_cell(std::int64_t v) { return {std::to_string(v), v}; }

Cell rat_cell(const Rat& r) { return text_cell(to_string(r)); }

Cell approx_cell(const Rat& r) { return text_cell(approx(r)); }

Cell opt_rat_cell(const std::optional<Rat>& r, const char* none) {
  return r ? rat_cell(*r) : text_cell(none);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render(const Table& t, const std::string& format) {
  if (format == "json") {
    Json j;
    j["columns"] = t.columns;
    j["rows"] = Json::array();
    for (const auto& row : t.rows) {
      Json r = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i].json;
      j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
  }
  std::string s = csv_line(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(c.text);
    s += csv_line(fields);
  }
  return s;
}

// State shared between the command handlers of one invocation.
struct Context {
  std::string format = "csv";
  std::optional<std::string> domain_digest;
  std::string output;
};

Domain parse_part(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("part \"" + text + "\" needs a type prefix");
  std::string type = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (type == "ball") return {Ball(parse_rat(rest))};
  if (type == "ellipsoid") {
    auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw ParseError("ellipsoid part needs a:b, got \"" + rest + "\"");
    return {Ellipsoid(parse_rat(rest.substr(0, c2)), parse_rat(rest.substr(c2 + 1)))};
  }
  if (type == "toric" || type == "domain") return load_domain(rest);
  throw ParseError("unknown part type \"" + type + "\"");
}

struct DomainFlags {
  std::vector<std::string> ellipsoid;
  std::string ball;
  std::string toric;
  std::string domain;
  std::vector<std::string> parts;

  void attach(CLI::App* app, bool with_parts) {
    app->add_option("--ellipsoid", ellipsoid, "E(a, b) given as two rationals")->expected(2);
    app->add_option("--ball", ball, "B(a)");
    app->add_option("--toric", toric, "toric profile JSON file");
    app->add_option("--domain", domain, "domain JSON file");
    if (with_parts) {
      app->add_option("--part", parts, "union part: ball:A, ellipsoid:A:B, toric:FILE");
    }
  }

  Domain resolve(Context& ctx) const {
    int given = !ellipsoid.empty() + !ball.empty() + !toric.empty() + !domain.empty() +
                !parts.empty();
    if (given != 1) {
      throw CLI::ValidationError("exactly one of --ellipsoid, --ball, --toric, --domain" +
                                 std::string(parts.empty() ? "" : ", --part") + " is required");
    }
    Domain d = [&]() -> Domain {
      if (!ellipsoid.empty()) return {Ellipsoid(parse_rat(ellipsoid[0]), parse_rat(ellipsoid[1]))};
      if (!ball.empty()) return {Ball(parse_rat(ball))};
      if (!domain.empty()) return load_domain(domain);
      if (!toric.empty()) {
        Json j = parse_json(read_text_file(toric));
        if (!j.contains("type")) j["type"] = "toric";
        Domain t = domain_from_json(j);
        if (!std::holds_alternative<ToricProfile>(t.shape)) {
          throw ParseError(toric + " does not describe a toric domain");
        }
        return t;
      }
      DisjointUnion u;
      for (const auto& p : parts) u.parts.push_back(parse_part(p));
      return {std::move(u)};
    }();
    ctx.domain_digest = sha256_hex(domain_to_json(d).dump());
    return d;
  }
};

std::optional<std::filesystem::path> cache_file(const std::string& key) {
  const char* dir = std::getenv("ECHCAP_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / ("spectrum-" + sha256_hex(key) + ".txt");
}

// Spectrum table for k = 0..k_max, served from ECHCAP_CACHE_DIR for the
// domains whose capacities take a search.
std::string spectrum_output(const Domain& d, std::int64_t k_max, Context& ctx,
                            std::ostream& err) {
  const bool cacheable = std::holds_alternative<ToricProfile>(d.shape) ||
                         std::holds_alternative<DisjointUnion>(d.shape);
  std::optional<std::filesystem::path> cached;
  if (cacheable) {
    cached = cache_file(std::string(ECHCAP_VERSION) + "\n" + domain_to_json(d).dump() + "\n" +
                        std::to_string(k_max) + "\n" + ctx.format);
  }
  if (cached && std::filesystem::exists(*cached)) return read_text_file(*cached);

  const bool is_union = std::holds_alternative<DisjointUnion>(d.shape);
  Table t{{"k", "exact", "approx", is_union ? "partition" : "witness"}, {}};
  auto spectrum = Spectrum::from_domain(d);
  auto entries = spectrum.prefix(k_max);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    Cell w{witness_text(e.witness), witness_to_json(e.witness)};
    t.rows.push_back(
        {int_cell(static_cast<std::int64_t>(k)), rat_cell(e.value), approx_cell(e.value), w});
  }
  std::string text = render(t, ctx.format);
  if (cached) {
    try {
      std::filesystem::create_directories(cached->parent_path());
      write_text_file(*cached, text);
    } catch (const std::exception& e) {
      err << "warning: cache not written: " << e.what() << "\n";
    }
  }
  return text;
}

std::vector<Rat> parse_rats(const std::vector<std::string>& xs) {
  std::vector<Rat> out;
  for (const auto& x : xs) out.push_back(parse_rat(x));
  return out;
}

std::string gap_text(const std::optional<Rat>& g) { return g ? to_string(*g) : "inf"; }

int run_impl(const std::vector<std::string>& args, Context& ctx, std::ostream& out,
             std::ostream& err);

int replay(const std::string& manifest_path, Context& ctx, std::ostream& err) {
  Json m = parse_json(read_text_file(manifest_path));
  std::vector<std::string> argv;
  for (const auto& a : m.at("command")) argv.push_back(a.get<std::string>());
  std::string expected;
  for (const auto& line : m.at("rows")) expected += line.get<std::string>() + "\n";
  if (sha256_hex(expected) != m.at("output_sha256").get<std::string>()) {
    throw ConsistencyError("manifest rows do not match its own output digest");
  }

  Context inner;
  std::ostringstream sink;
  int code = run_impl(argv, inner, sink, err);
  if (code != kOk) return code;
  if (m.contains("domain_digest") && !m.at("domain_digest").is_null() &&
      inner.domain_digest != m.at("domain_digest").get<std::string>()) {
    throw ConsistencyError("domain digest changed since the manifest was written");
  }
  if (inner.output != expected) {
    std::istringstream a(expected), b(inner.output);
    std::string la, lb;
    std::size_t line = 0;
    while (true) {
      ++line;
      bool ga = static_cast<bool>(std::getline(a, la));
      bool gb = static_cast<bool>(std::getline(b, lb));
      if (!ga && !gb) break;
      if (!ga || !gb || la != lb) {
        throw ConsistencyError("replay differs at line " + std::to_string(line) + ": expected \"" +
                               (ga ? la : "<end>") + "\", got \"" + (gb ? lb : "<end>") + "\"");
      }
    }
  }
  Table t{{"status", "rows", "output_sha256"}, {}};
  t.rows.push_back({text_cell("identical"), int_cell(static_cast<std::int64_t>(m.at("rows").size())),
                    text_cell(sha256_hex(inner.output))});
  ctx.output = render(t, ctx.format);
  return kOk;
}

int run_impl(const std::vector<std::string>& args, Context& ctx, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Exact ECH capacities, spectral gaps and closing numbers", "echcap"};
  app.set_version_flag("--version", ECHCAP_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  std::string manifest;
  app.add_option("--manifest", manifest, "write a reproducibility manifest to this file");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "capacities c_0 .. c_kmax with witnesses");
  DomainFlags spectrum_domain;
  spectrum_domain.attach(spectrum, false);
  std::int64_t k_max = 0;
  spectrum->add_option("--k-max", k_max, "largest k")->required()->check(CLI::NonNegativeNumber);

  // union
  auto* union_cmd = app.add_subcommand("union", "capacities of a disjoint union");
  DomainFlags union_domain;
  union_cmd->add_option("--part", union_domain.parts, "ball:A, ellipsoid:A:B or toric:FILE")
      ->required();
  std::int64_t union_k_max = 0;
  union_cmd->add_option("--k-max", union_k_max, "largest k")
      ->required()
      ->check(CLI::NonNegativeNumber);

  // close
  auto* close = app.add_subcommand("close", "Close^L of an ellipsoid boundary");
  std::string close_a, close_b;
  std::vector<std::string> close_L;
  bool with_gap = false;
  close->add_option("--a", close_a)->required();
  close->add_option("--b", close_b)->required();
  close->add_option("--L", close_L, "action bound, repeatable")->required();
  close->add_flag("--with-gap", with_gap, "also check Close^L <= Gap^L");

  // gap
  auto* gap = app.add_subcommand("gap", "minimum spectral gap Gap^L");
  DomainFlags gap_domain;
  gap_domain.attach(gap, false);
  std::vector<std::string> gap_L;
  gap->add_option("--L", gap_L, "action bound, repeatable")->required();

  // weyl
  auto* weyl = app.add_subcommand("weyl", "c_k^2 / k against twice the contact volume");
  DomainFlags weyl_domain;
  weyl_domain.attach(weyl, true);
  std::vector<std::int64_t> weyl_k;
  weyl->add_option("--k", weyl_k, "capacity index, repeatable")->required();

  // gap-asymptotics
  auto* asym = app.add_subcommand("gap-asymptotics", "L Gap^L and its suffix supremum");
  DomainFlags asym_domain;
  asym_domain.attach(asym, true);
  std::vector<std::string> asym_L;
  std::string L_min, L_max, L_step;
  asym->add_option("--L", asym_L, "grid point, repeatable");
  asym->add_option("--L-min", L_min);
  asym->add_option("--L-max", L_max);
  asym->add_option("--L-step", L_step);

  // index
  auto* index = app.add_subcommand("index", "ECH index of orbit sets and lattice paths");
  std::string idx_a, idx_b, orbit_file, path_file, labels_file;
  std::optional<std::int64_t> m1, m2, scan;
  index->add_option("--a", idx_a);
  index->add_option("--b", idx_b);
  index->add_option("--m1", m1)->check(CLI::NonNegativeNumber);
  index->add_option("--m2", m2)->check(CLI::NonNegativeNumber);
  index->add_option("--scan", scan, "check I = 2k over 0 <= m1, m2 <= N")
      ->check(CLI::NonNegativeNumber);
  index->add_option("--orbit-set", orbit_file, "orbit set JSON");
  index->add_option("--path", path_file, "convex lattice path JSON");
  index->add_option("--labels", labels_file, "toric orbit labels JSON");

  // validate
  auto* validate = app.add_subcommand("validate", "check a domain description");
  DomainFlags validate_domain;
  validate_domain.attach(validate, true);

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare its output");
  std::string replay_file;
  replay_cmd->add_option("manifest", replay_file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (spectrum->parsed()) {
    Domain d = spectrum_domain.resolve(ctx);
    ctx.output = spectrum_output(d, k_max, ctx, err);
  } else if (union_cmd->parsed()) {
    Domain d = union_domain.resolve(ctx);
    ctx.output = spectrum_output(d, union_k_max, ctx, err);
  } else if (close->parsed()) {
    Rat a = parse_rat(close_a), b = parse_rat(close_b);
    auto Ls = parse_rats(close_L);
    if (with_gap) {
      Table t{{"L", "close", "gap", "ok"}, {}};
      for (const auto& r : close_gap_consistency(a, b, Ls)) {
        t.rows.push_back({rat_cell(r.L), rat_cell(r.close), text_cell(gap_text(r.gap)),
                          text_cell(r.ok ? "true" : "false")});
      }
      ctx.output = render(t, ctx.format);
    } else {
      Table t{{"L", "close", "approx", "m_minus", "n_minus", "m_plus", "n_plus"}, {}};
      for (const auto& L : Ls) {
        auto r = ellipsoid_close_report(a, b, L);
        t.rows.push_back({rat_cell(L), rat_cell(r.value), approx_cell(r.value),
                          text_cell(r.below.m.str()), text_cell(r.below.n.str()),
                          text_cell(r.above.m.str()), text_cell(r.above.n.str())});
      }
      ctx.output = render(t, ctx.format);
    }
  } else if (gap->parsed()) {
    auto s = Spectrum::from_domain(gap_domain.resolve(ctx));
    Table t{{"L", "gap", "approx", "achieving_k"}, {}};
    for (const auto& L : parse_rats(gap_L)) {
      auto r = spectral_gap(s, L);
      t.rows.push_back({rat_cell(L), text_cell(gap_text(r.gap)),
                        text_cell(r.gap ? approx(*r.gap) : "inf"),
                        r.achieving_k ? int_cell(*r.achieving_k) : text_cell("")});
    }
    ctx.output = render(t, ctx.format);
  } else if (weyl->parsed()) {
    Domain d = weyl_domain.resolve(ctx);
    auto s = Spectrum::from_domain(d);
    // Ellipsoids invert the lattice count directly instead of walking the
    // whole sequence.
    std::function<Rat(std::int64_t)> c = [&](std::int64_t k) { return s.value(k); };
    if (const auto* e = std::get_if<Ellipsoid>(&d.shape)) {
      c = [e](std::int64_t k) { return nk_via_lattice(e->a(), e->b(), k); };
    }
    Table t{{"k", "c_k", "ratio", "ratio_approx", "deviation", "deviation_approx"}, {}};
    for (const auto& r : weyl_report(c, contact_volume(d), weyl_k)) {
      t.rows.push_back({int_cell(r.k), rat_cell(r.c), rat_cell(r.ratio), approx_cell(r.ratio),
                        rat_cell(r.deviation), approx_cell(r.deviation)});
    }
    ctx.output = render(t, ctx.format);
  } else if (asym->parsed()) {
    auto grid = parse_rats(asym_L);
    if (!L_min.empty() || !L_max.empty() || !L_step.empty()) {
      if (L_min.empty() || L_max.empty() || L_step.empty()) {
        throw CLI::ValidationError("--L-min, --L-max and --L-step go together");
      }
      Rat lo = parse_rat(L_min), hi = parse_rat(L_max), step = parse_rat(L_step);
      if (step <= 0) throw PreconditionError("--L-step must be positive");
      for (Rat L = lo; L <= hi; L += step) grid.push_back(L);
    }
    if (grid.empty()) throw CLI::ValidationError("no grid points given");
    auto s = Spectrum::from_domain(asym_domain.resolve(ctx));
    Table t{{"L", "gap", "L_times_gap", "suffix_sup"}, {}};
    for (const auto& r : gap_asymptotics(s, grid)) {
      t.rows.push_back({rat_cell(r.L), text_cell(gap_text(r.gap)),
                        text_cell(gap_text(r.L_times_gap)), opt_rat_cell(r.suffix_sup, "none")});
    }
    ctx.output = render(t, ctx.format);
  } else if (index->parsed()) {
    if (!orbit_file.empty()) {
      auto alpha = orbit_set_from_json(parse_json(read_text_file(orbit_file)));
      Table t{{"index"}, {{int_cell(star_shaped_index(alpha))}}};
      ctx.output = render(t, ctx.format);
    } else if (!path_file.empty() || !labels_file.empty()) {
      LatticePath path =
          !path_file.empty()
              ? path_from_json(parse_json(read_text_file(path_file)))
              : orbit_set_to_path(orbit_labels_from_json(parse_json(read_text_file(labels_file))));
      auto r = path_index_bounds(path);
      Table t{{"lower", "upper", "lattice_count", "path"}, {}};
      t.rows.push_back({int_cell(r.lower), int_cell(r.upper), int_cell(r.lattice_count),
                        Cell{witness_text({path}), path_to_json(path)}});
      ctx.output = render(t, ctx.format);
    } else {
      if (idx_a.empty() || idx_b.empty()) {
        throw CLI::ValidationError("index needs --a and --b, or --orbit-set, --path or --labels");
      }
      Rat a = parse_rat(idx_a), b = parse_rat(idx_b);
      if (scan) {
        auto report = index_action_scan(a, b, *scan);
        Table t{{"m1", "m2", "action", "index", "rank", "triangle_count", "ok"}, {}};
        for (const auto& r : report.rows) {
          t.rows.push_back({int_cell(r.m1), int_cell(r.m2), rat_cell(r.action), int_cell(r.index),
                            int_cell(r.rank), int_cell(r.triangle_count),
                            text_cell(r.ok ? "true" : "false")});
        }
        ctx.output = render(t, ctx.format);
        if (!report.all_pass) {
          out << ctx.output;
          err << "error: index/action scan found a mismatch\n";
          return kConsistency;
        }
      } else {
        if (!m1 || !m2) throw CLI::ValidationError("index needs --m1 and --m2 (or --scan)");
        Table t{{"m1", "m2", "action", "index"}, {}};
        t.rows.push_back({int_cell(*m1), int_cell(*m2), rat_cell(ellipsoid_action(a, b, *m1, *m2)),
                          int_cell(ellipsoid_index(a, b, *m1, *m2))});
        ctx.output = render(t, ctx.format);
      }
    }
  } else if (validate->parsed()) {
    Domain d = validate_domain.resolve(ctx);
    static const char* names[] = {"ellipsoid", "ball", "toric", "union"};
    Rat v = contact_volume(d);
    Table t{{"type", "contact_volume", "approx"}, {}};
    t.rows.push_back({text_cell(names[d.shape.index()]), rat_cell(v), approx_cell(v)});
    ctx.output = render(t, ctx.format);
  } else if (replay_cmd->parsed()) {
    int code = replay(replay_file, ctx, err);
    if (code != kOk) return code;
  }

  out << ctx.output;

  if (!manifest.empty()) {
    std::vector<std::string> command;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      command.push_back(args[i]);
    }
    Json m;
    m["artifact_version"] = ECHCAP_VERSION;
    m["command"] = command;
    m["domain_digest"] = ctx.domain_digest ? Json(*ctx.domain_digest) : Json(nullptr);
    m["format"] = ctx.format;
    m["output_sha256"] = sha256_hex(ctx.output);
    m["rows"] = Json::array();
    std::istringstream lines(ctx.output);
    for (std::string line; std::getline(lines, line);) m["rows"].push_back(line);
    write_text_file(manifest, m.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  try {
    return run_impl(args, ctx, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DivisionByZero& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const UnavailableError& e) {
    err << "unavailable: " << e.what() << "\n";
    return kUnavailable;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace echcap::cli
