#include "planecycles/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "planecycles/acceptance.hpp"
#include "planecycles/affine_embedder.hpp"
#include "planecycles/galois_field.hpp"
#include "planecycles/levi.hpp"
#include "planecycles/plane_io.hpp"
#include "planecycles/projective_embedder.hpp"
#include "planecycles/verification.hpp"

namespace planecycles::cli {
namespace {

using nlohmann::json;

// Carries an exit code out of a command.
struct Exit {
  int code;
  std::string message;
};

std::optional<Format> parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "text") return Format::text;
  if (text == "dot") return Format::dot;
  return std::nullopt;
}

Plane acquire_plane(const CommandConfig& cfg) {
  const bool generated = cfg.kind || cfg.p;
  if (generated == cfg.plane_path.has_value()) {
    throw Exit{kParseError, "give exactly one plane source: --plane <path> or --kind/--p/--k"};
  }
  if (cfg.plane_path) {
    try {
      return load_plane(*cfg.plane_path);
    } catch (const ParseError& e) {
      throw Exit{kParseError, *cfg.plane_path + ":" + e.what()};
    } catch (const AxiomViolation& e) {
      throw Exit{kValidationFailure, *cfg.plane_path + ": " + e.axiom() + ": " + e.what()};
    } catch (const PlaneError& e) {
      throw Exit{kValidationFailure, *cfg.plane_path + ": " + e.what()};
    } catch (const std::ios_base::failure& e) {
      throw Exit{kParseError, *cfg.plane_path + ": " + e.what()};
    }
  }
  if (!cfg.kind || !cfg.p) throw Exit{kParseError, "--kind and --p are both required to generate a plane"};
  const auto kind = parse_plane_kind(*cfg.kind);
  if (!kind || *kind == PlaneKind::partial) throw Exit{kParseError, "--kind must be affine or projective"};
  try {
    const FieldSpec field = make_field(*cfg.p, cfg.k, 256);
    return *kind == PlaneKind::affine ? build_affine_classical(field) : build_projective_classical(field);
  } catch (const FieldError& e) {
    throw Exit{kParseError, e.what()};
  }
}

// Write to --out when given, otherwise to `out`.
void emit(const CommandConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out) {
    write_file(*cfg.out, text);
  } else {
    out << text;
  }
}

int upper_bound_for(const Plane& plane) {
  const int q = plane.order();
  if (plane.kind() == PlaneKind::affine) return q * q;
  if (plane.kind() == PlaneKind::projective) return q * q + q + 1;
  throw Exit{kValidationFailure, "cycles are embedded in affine or projective planes, not partial ones"};
}

std::pair<int, int> requested_range(const CommandConfig& cfg, const Plane& plane, bool default_all) {
  const int hi = upper_bound_for(plane);
  std::pair<int, int> r{3, hi};
  if (cfg.cycle_k && cfg.range) throw Exit{kParseError, "--cycle-k and --range are exclusive"};
  if (cfg.cycle_k) {
    r = {*cfg.cycle_k, *cfg.cycle_k};
  } else if (cfg.range) {
    r = *cfg.range;
  } else if (!default_all) {
    throw Exit{kParseError, "--cycle-k or --range is required"};
  }
  if (r.first < 3 || r.second > hi) {
    throw Exit{kParseError, "cycle length must lie in 3.." + std::to_string(hi) + " for this plane"};
  }
  return r;
}

EmbedOptions embed_options(const CommandConfig& cfg) {
  EmbedOptions o;
  if (cfg.budget) o.search_budget = *cfg.budget;
  o.seed = cfg.seed;
  return o;
}

// One embedder per plane, reused across k.
class Embedders {
 public:
  Embedders(const Plane& plane, EmbedOptions options) {
    if (plane.kind() == PlaneKind::affine) {
      affine_.emplace(plane, options);
    } else {
      projective_.emplace(plane, options);
    }
  }
  Embedding embed(int k) const { return affine_ ? affine_->embed(k) : projective_->embed(k); }

 private:
  std::optional<AffineEmbedder> affine_;
  std::optional<ProjectiveEmbedder> projective_;
};

json cycle_record(const Plane& plane, const Embedding& e) {
  return {{"plane_digest", plane.digest()},
          {"kind", std::string(to_string(plane.kind()))},
          {"order", plane.order()},
          {"k", e.cycle.k()},
          {"branch", e.branch},
          {"cycle_points", e.cycle.points},
          {"cycle_lines", e.cycle.lines},
          {"verification", to_json(e.report)}};
}

std::string plane_header(const Plane& plane) {
  return "# " + std::string(to_string(plane.kind())) + " plane of order " + std::to_string(plane.order()) +
         ", digest " + plane.digest() + "\n";
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_gen(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.plane_path) throw Exit{kParseError, "gen builds a plane; --plane is not accepted"};
  if (cfg.format && *cfg.format != Format::text) throw Exit{kParseError, "gen writes the plane text format only"};
  emit(cfg, out, canonical_text(acquire_plane(cfg)));
  return kOk;
}

int cmd_validate(const CommandConfig& cfg, std::ostream& out) {
  std::optional<Plane> plane;
  if (cfg.plane_path) {
    // Certify rather than reject: parse without the axiom check.
    if (cfg.kind || cfg.p) throw Exit{kParseError, "give exactly one plane source"};
    try {
      plane.emplace(parse_plane(read_file(*cfg.plane_path)));
    } catch (const ParseError& e) {
      throw Exit{kParseError, *cfg.plane_path + ":" + e.what()};
    } catch (const PlaneError& e) {
      throw Exit{kValidationFailure, *cfg.plane_path + ": " + e.what()};
    } catch (const std::ios_base::failure& e) {
      throw Exit{kParseError, *cfg.plane_path + ": " + e.what()};
    }
  } else {
    plane.emplace(acquire_plane(cfg));
  }
  const CertificationReport report = certify_plane(*plane);
  const Format format = cfg.format.value_or(Format::text);
  if (format == Format::dot) throw Exit{kParseError, "validate writes json or text"};
  std::ostringstream text;
  if (format == Format::json) {
    text << to_json(report).dump(2) << "\n";
  } else {
    text << plane_header(*plane);
    for (const Check& c : report.checks) {
      text << (c.pass ? "pass " : "FAIL ") << c.name;
      if (!c.detail.empty()) text << ": " << c.detail;
      if (!c.witness.empty()) {
        text << " [";
        for (std::size_t i = 0; i < c.witness.size(); ++i) text << (i ? " " : "") << c.witness[i];
        text << "]";
      }
      text << "\n";
    }
    text << (report.ok ? "valid" : "invalid") << "\n";
  }
  emit(cfg, out, text.str());
  return report.ok ? kOk : kValidationFailure;
}

int cmd_embed(const CommandConfig& cfg, std::ostream& out) {
  const Plane plane = acquire_plane(cfg);
  if (cfg.range) throw Exit{kParseError, "embed takes --cycle-k; use sweep for ranges"};
  const auto [k, unused] = requested_range(cfg, plane, false);
  const Format format = cfg.format.value_or(Format::json);
  if (format == Format::dot) throw Exit{kParseError, "embed writes json or text"};
  const Embedding e = Embedders(plane, embed_options(cfg)).embed(k);
  std::ostringstream text;
  if (format == Format::json) {
    text << cycle_record(plane, e).dump(2) << "\n";
  } else {
    text << plane_header(plane) << "k " << k << "\nbranch " << e.branch << "\n";
    for (int i = 0; i < e.cycle.k(); ++i) {
      text << "p" << e.cycle.points[static_cast<std::size_t>(i)] << " L" << e.cycle.lines[static_cast<std::size_t>(i)]
           << "\n";
    }
    text << (e.report.ok ? "verified" : "NOT verified") << "\n";
  }
  emit(cfg, out, text.str());
  return e.report.ok ? kOk : kConstructionFailed;
}

int cmd_sweep(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const Plane plane = acquire_plane(cfg);
  const auto [lo, hi] = requested_range(cfg, plane, true);
  const Format format = cfg.format.value_or(Format::text);
  if (format == Format::dot) throw Exit{kParseError, "sweep writes json or text"};
  const Embedders embedders(plane, embed_options(cfg));

  std::ostringstream text;
  if (format == Format::text) text << plane_header(plane) << "k ok branch\n";
  bool all_ok = true;
  for (int k = lo; k <= hi; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string branch;
    std::string error;
    try {
      const Embedding e = embedders.embed(k);
      ok = e.report.ok;
      branch = e.branch;
    } catch (const EmbedError& e) {
      error = e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    err << "k=" << k << " " << std::fixed << std::setprecision(3) << ms << " ms\n";
    all_ok = all_ok && ok;
    if (format == Format::json) {
      json row{{"k", k}, {"ok", ok}, {"branch", branch}};
      if (!error.empty()) row["error"] = error;
      text << row.dump() << "\n";
    } else {
      text << k << " " << (ok ? "ok" : "FAIL") << " " << (ok ? branch : error) << "\n";
    }
  }
  emit(cfg, out, text.str());
  return all_ok ? kOk : kConstructionFailed;
}

int cmd_oracle(const CommandConfig& cfg, std::ostream& out) {
  const Plane plane = acquire_plane(cfg);
  std::pair<int, int> r;
  if (cfg.cycle_k && cfg.range) throw Exit{kParseError, "--cycle-k and --range are exclusive"};
  if (cfg.cycle_k) {
    r = {*cfg.cycle_k, *cfg.cycle_k};
  } else if (cfg.range) {
    r = *cfg.range;
  } else {
    throw Exit{kParseError, "--cycle-k or --range is required"};
  }
  if (r.first < 3) throw Exit{kParseError, "cycle length must be at least 3"};
  const Format format = cfg.format.value_or(Format::json);
  if (format == Format::dot) throw Exit{kParseError, "oracle writes json or text"};
  const std::uint64_t budget = cfg.budget.value_or(kDefaultSearchBudget);

  std::ostringstream text;
  bool complete = true;
  for (int k = r.first; k <= r.second; ++k) {
    SearchResult result = brute_force_cycle(plane, k, budget);
    complete = complete && result.status != SearchStatus::budget_exhausted;
    if (result.cycle && !verify_embedding(plane, *result.cycle).ok) {
      throw Exit{kConstructionFailed, "search returned an invalid cycle for k=" + std::to_string(k)};
    }
    if (format == Format::json) {
      json row = to_json(result);
      row["k"] = k;
      text << row.dump() << "\n";
    } else {
      text << k << " " << to_string(result.status) << " nodes=" << result.nodes << "\n";
    }
  }
  emit(cfg, out, text.str());
  return complete ? kOk : kValidationFailure;
}

int cmd_export_dot(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.format && *cfg.format != Format::dot) throw Exit{kParseError, "export-dot writes dot only"};
  emit(cfg, out, levi_dot(acquire_plane(cfg)));
  return kOk;
}

int cmd_selftest(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  AcceptanceOptions options;
  std::error_code ec;
  const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) options.tool = self;
  if (cfg.plane_path) options.data_dir = std::filesystem::path(*cfg.plane_path);
  if (cfg.seed) options.seeds = static_cast<int>(*cfg.seed);
  std::ostringstream report;
  const auto results = run_acceptance(options, report, &err);
  emit(cfg, out, report.str());
  for (const auto& r : results) {
    if (!r.pass) return kValidationFailure;
  }
  return kOk;
}

}  // namespace

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) return std::nullopt;
    const int hi = std::stoi(b, &used);
    if (used != b.size() || lo > hi) return std::nullopt;
    return std::pair{lo, hi};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle embeddings in finite affine and projective planes", "planecycles"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommandConfig cfg;
  std::string range_text;
  std::string format_text;
  std::optional<std::uint32_t> field_degree;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--kind", cfg.kind, "affine or projective (generated plane)");
    sub->add_option("--p", cfg.p, "field characteristic (generated plane)");
    sub->add_option("--k", field_degree, "field extension degree (generated plane, default 1)");
    sub->add_option("--plane", cfg.plane_path, "plane file");
    sub->add_option("--out", cfg.out, "write output here instead of stdout");
    sub->add_option("--format", format_text, "json, text or dot");
  };
  auto cycles = [&](CLI::App* sub) {
    sub->add_option("--cycle-k", cfg.cycle_k, "cycle length");
    sub->add_option("--range", range_text, "cycle lengths a..b");
    sub->add_option("--seed", cfg.seed, "randomise O, pencil order, entry points and anchors");
    sub->add_option("--budget", cfg.budget, "search budget in nodes");
  };

  CLI::App* gen = app.add_subcommand("gen", "write a classical plane");
  common(gen);
  CLI::App* validate = app.add_subcommand("validate", "certify a plane");
  common(validate);
  CLI::App* embed = app.add_subcommand("embed", "embed one cycle");
  common(embed);
  cycles(embed);
  CLI::App* sweep = app.add_subcommand("sweep", "embed every admissible cycle length");
  common(sweep);
  cycles(sweep);
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive cycle search");
  common(oracle);
  cycles(oracle);
  CLI::App* dot = app.add_subcommand("export-dot", "Levi graph in DOT");
  common(dot);
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--out", cfg.out, "write the report here instead of stdout");
  selftest->add_option("--plane", cfg.plane_path, "directory with extra plane files");
  selftest->add_option("--seed", cfg.seed, "fuzzed frames per plane");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParseError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (field_degree) cfg.k = *field_degree;
  if (!range_text.empty()) {
    cfg.range = parse_range(range_text);
    if (!cfg.range) {
      err << "error: --range expects a..b\n";
      return kParseError;
    }
  }
  if (!format_text.empty()) {
    cfg.format = parse_format(format_text);
    if (!cfg.format) {
      err << "error: --format expects json, text or dot\n";
      return kParseError;
    }
  }

  try {
    if (cfg.subcommand == "gen") return cmd_gen(cfg, out);
    if (cfg.subcommand == "validate") return cmd_validate(cfg, out);
    if (cfg.subcommand == "embed") return cmd_embed(cfg, out);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg, out);
    if (cfg.subcommand == "export-dot") return cmd_export_dot(cfg, out);
    return cmd_selftest(cfg, out, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const EmbedError& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == EmbedErrorCode::OutOfRange ? kParseError : kConstructionFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
}

}  // namespace planecycles::cli
