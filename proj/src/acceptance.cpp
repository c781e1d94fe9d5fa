#include "planecycles/acceptance.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "planecycles/affine_embedder.hpp"
#include "planecycles/cli.hpp"
#include "planecycles/galois_field.hpp"
#include "planecycles/levi.hpp"
#include "planecycles/plane_io.hpp"
#include "planecycles/projective_embedder.hpp"
#include "planecycles/verification.hpp"

namespace planecycles {
namespace {

namespace fs = std::filesystem;

struct Order {
  std::uint32_t p;
  std::uint32_t k;
  int ipow() const {
    int r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r *= static_cast<int>(p);
    return r;
  }
};

const std::vector<Order> kOrders = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}};

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> generated(const char* sub, const char* kind, const Order& o) {
  return {sub, "--kind", kind, "--p", std::to_string(o.p), "--k", std::to_string(o.k)};
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

// Checks one sweep's JSON rows: every k in lo..hi present once and ok.
std::string sweep_problem(const CliRun& run, int lo, int hi) {
  if (run.code != 0) return "exit code " + std::to_string(run.code);
  std::istringstream rows(run.out);
  std::string line;
  int expect = lo;
  while (std::getline(rows, line)) {
    const auto row = nlohmann::json::parse(line);
    if (row.at("k").get<int>() != expect) return "row for k=" + std::to_string(expect) + " missing";
    if (!row.at("ok").get<bool>()) return "k=" + std::to_string(expect) + " failed";
    ++expect;
  }
  if (expect != hi + 1) return "rows stop at k=" + std::to_string(expect - 1);
  return "";
}

std::vector<Plane> affine_test_planes(const AcceptanceOptions& options, int max_q) {
  std::vector<Plane> out;
  for (const Order& o : kOrders) {
    if (o.ipow() <= max_q) out.push_back(build_affine_classical(make_field(o.p, o.k)));
  }
  if (options.data_dir && fs::exists(*options.data_dir / "nearfield9.txt") && max_q >= 9) {
    const Plane proj = load_plane(*options.data_dir / "nearfield9.txt");
    out.push_back(affine_from_projective(proj, proj.num_lines() - 1).plane);
  }
  return out;
}

std::vector<Plane> projective_test_planes(const AcceptanceOptions& options) {
  std::vector<Plane> out;
  for (const Order& o : kOrders) out.push_back(build_projective_classical(make_field(o.p, o.k)));
  if (options.data_dir && fs::exists(*options.data_dir / "nearfield9.txt")) {
    out.push_back(load_plane(*options.data_dir / "nearfield9.txt"));
  }
  return out;
}

// Canonical frame plus `seeds` random ones (random O and pencil order).
std::vector<Frame> frames_for(const Plane& plane, int seeds) {
  std::vector<Frame> out{choose_frame(plane)};
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 7919 + 17);
    const PointId o = std::uniform_int_distribution<PointId>(0, plane.num_points() - 1)(rng);
    auto through = plane.lines_through(o);
    std::vector<LineId> pencil(through.begin(), through.end());
    std::shuffle(pencil.begin(), pencil.end(), rng);
    out.push_back(choose_frame(plane, o, std::move(pencil)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria

CriterionResult pancyclic_sweeps(int id, const char* name, const char* kind, double limit_seconds) {
  CriterionResult r{id, name, true, "", 0, ""};
  std::ostringstream detail;
  double slowest = 0;
  for (const Order& o : kOrders) {
    const int q = o.ipow();
    const int hi = std::string(kind) == "affine" ? q * q : q * q + q + 1;
    auto args = generated("sweep", kind, o);
    args.insert(args.end(), {"--format", "json"});
    const auto t0 = std::chrono::steady_clock::now();
    const CliRun run = run_cli(args);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, secs);
    std::string problem = sweep_problem(run, 3, hi);
    if (problem.empty() && secs > limit_seconds) problem = "took " + std::to_string(secs) + " s";
    if (!problem.empty()) {
      r.pass = false;
      detail << " q=" << q << ": " << problem << ";";
    }
  }
  if (r.pass) {
    detail << "q in {2,3,4,5,7,8,9,11,13}, every k verified";
  }
  std::ostringstream timing;
  timing << "slowest plane " << std::fixed << std::setprecision(3) << slowest << " s (limit " << limit_seconds << " s)";
  r.timing = timing.str();
  r.detail = detail.str();
  return r;
}

CriterionResult oracle_equivalence() {
  CriterionResult r{3, "oracle-equivalence", true, "", 0, ""};
  std::ostringstream detail;
  int compared = 0;
  for (const Order& o : {Order{2, 1}, Order{3, 1}}) {
    const FieldSpec f = make_field(o.p, o.k);
    for (const Plane& plane : {build_affine_classical(f), build_projective_classical(f)}) {
      const int q = plane.order();
      const int hi = plane.kind() == PlaneKind::affine ? q * q : q * q + q + 1;
      EmbedOptions constructive;
      constructive.search_small_orders = false;
      std::set<int> searched;
      std::set<int> embedded;
      std::set<int> expected;
      for (int k = 3; k <= hi; ++k) expected.insert(k);
      for (int k = 3; k <= plane.num_points() + 1; ++k) {
        const SearchResult s = brute_force_cycle(plane, k, kDefaultSearchBudget);
        if (s.status == SearchStatus::budget_exhausted) {
          r.pass = false;
          detail << " search budget exhausted at k=" << k << ";";
        }
        if (s.status == SearchStatus::found && verify_embedding(plane, *s.cycle).ok) searched.insert(k);
        try {
          const Embedding e = plane.kind() == PlaneKind::affine ? embed_affine_cycle(plane, k, constructive)
                                                                : embed_projective_cycle(plane, k, constructive);
          if (e.report.ok && e.cycle.k() == k) embedded.insert(k);
        } catch (const EmbedError&) {
        }
        ++compared;
      }
      if (searched != expected || embedded != searched) {
        r.pass = false;
        detail << " " << to_string(plane.kind()) << " q=" << q << ": search and construction disagree;";
      }
    }
  }
  if (r.pass) detail << compared << " lengths compared on AG/PG(2,2) and AG/PG(2,3); sets equal [3, upper bound]";
  r.detail = detail.str();
  return r;
}

CriterionResult base_path_disjointness(const AcceptanceOptions& options) {
  CriterionResult r{4, "base-paths-disjoint", true, "", 0, ""};
  long pairs = 0;
  long violations = 0;
  for (const Plane& plane : affine_test_planes(options, 9)) {
    const int q = plane.order();
    for (const Frame& frame : frames_for(plane, options.seeds)) {
      std::vector<Path> paths;
      for (PointId p : plane.points_on(frame.line(0))) {
        if (p == frame.origin) continue;
        const Path path = base_path(plane, frame, p);
        // Vertex i sits on l_i; the edge into it has the class of l_{i+1}.
        for (int i = 0; i <= q; ++i) {
          if (!plane.incident(path.points[static_cast<std::size_t>(i)], frame.line(i))) ++violations;
          if (i > 0 && plane.class_of(path.lines[static_cast<std::size_t>(i - 1)]) != frame.line_class(i + 1)) {
            ++violations;
          }
        }
        paths.push_back(path);
      }
      for (std::size_t a = 0; a < paths.size(); ++a) {
        const std::set<PointId> pa(paths[a].points.begin(), paths[a].points.end());
        const std::set<LineId> la(paths[a].lines.begin(), paths[a].lines.end());
        for (std::size_t b = a + 1; b < paths.size(); ++b) {
          ++pairs;
          for (PointId p : paths[b].points) violations += pa.count(p);
          for (LineId l : paths[b].lines) violations += la.count(l);
        }
      }
    }
  }
  r.pass = violations == 0 && pairs > 0;
  r.detail = std::to_string(pairs) + " base-path pairs over q <= 9 (classical and nearfield, " +
             std::to_string(options.seeds + 1) + " frames each), " + std::to_string(violations) + " violations";
  return r;
}

CriterionResult partition_properties(const AcceptanceOptions& options) {
  CriterionResult r{5, "cycle-partition", true, "", 0, ""};
  long partitions = 0;
  long violations = 0;
  for (const Plane& plane : affine_test_planes(options, 13)) {
    const int q = plane.order();
    for (const Frame& frame : frames_for(plane, options.seeds)) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(partitions));
      const CyclePartition part = cycle_partition(plane, frame, partitions % 2 ? &rng : nullptr);
      ++partitions;
      std::set<PointId> covered;
      std::size_t listed = 0;
      int t_sum = 0;
      for (const StructuredCycle& c : part.cycles) {
        listed += c.size();
        covered.insert(c.points.begin(), c.points.end());
        t_sum += c.t;
        if (c.size() % static_cast<std::size_t>(q + 1) != 0) ++violations;
        if (!verify_embedding(plane, EmbeddedCycle{c.points, c.lines}).ok) ++violations;
        for (int j = 0; j <= q; ++j) {
          const auto on = std::count_if(c.points.begin(), c.points.end(),
                                        [&](PointId p) { return plane.incident(p, frame.line(j)); });
          if (on != c.t) ++violations;
        }
      }
      if (covered.size() != static_cast<std::size_t>(q * q - 1) || listed != covered.size() ||
          covered.count(frame.origin)) {
        ++violations;
      }
      if (t_sum != q - 1) ++violations;
    }
  }
  r.pass = violations == 0;
  r.detail = std::to_string(partitions) + " partitions over q <= 13, " + std::to_string(violations) + " violations";
  return r;
}

CriterionResult resource_accounting(const AcceptanceOptions& options) {
  CriterionResult r{6, "resource-accounting", true, "", 0, ""};
  long spines = 0;
  long paths = 0;
  long ladders = 0;
  std::ostringstream problems;
  auto flag = [&](const std::string& what) {
    if (r.pass) problems << what;
    r.pass = false;
  };
  for (const Plane& plane : projective_test_planes(options)) {
    const int q = plane.order();
    for (int seed = -1; seed < options.seeds; ++seed) {
      std::optional<std::uint64_t> sd;
      if (seed >= 0) sd = static_cast<std::uint64_t>(seed);
      const ProjectiveContext ctx = make_context(plane, std::nullopt, sd);
      const int s = ctx.s();
      const CyclePartition& part = ctx.partition;
      const Frame& frame = part.frame;
      const std::string where = " q=" + std::to_string(q) + " seed=" + std::to_string(seed);

      // Spine P_m: pencil lines used are exactly l_1..l_{m-1}, and O is avoided.
      const std::set<LineId> pencil(frame.pencil.begin(), frame.pencil.end());
      for (int m = 1; m <= s; ++m) {
        const Spine spine = build_spine(part, m);
        std::set<LineId> used;
        for (LineId l : spine.path.lines) {
          if (pencil.count(l)) used.insert(l);
        }
        std::set<LineId> expected;
        for (int j = 1; j <= m - 1; ++j) expected.insert(frame.line(j));
        const bool has_o = std::count(spine.path.points.begin(), spine.path.points.end(), frame.origin) > 0;
        if (used != expected || has_o || spine.path.size() != static_cast<std::size_t>(part.lambda[m] * (q + 1))) {
          flag("spine P_" + std::to_string(m) + where);
        }
        ++spines;
      }

      // The path P.
      const AnchorSet anchors = select_anchors(ctx, sd);
      const InfinityPath p = build_infinity_path(ctx, anchors);
      Resources expected;
      for (int j = s; j <= q; ++j) {
        expected.lines.insert(ctx.line(j));
        expected.points.insert(ctx.at_infinity(j));
      }
      expected.lines.insert(ctx.line(0));
      expected.lines.insert(plane.line_through(anchors.at(s).w, ctx.at_infinity(s)));
      expected.lines.insert(ctx.line_at_infinity);
      expected.points.insert(ctx.at_infinity(0));
      expected.points.insert(ctx.origin);
      if (p.path.size() != static_cast<std::size_t>(q * q + s - 2) || !(p.unused == expected) ||
          !(unused_resources(plane, p.path) == expected)) {
        flag("path P" + where);
      }
      ++paths;

      // The (q^2+q)-cycle Q.
      if (s < q - 1) {
        const EmbeddedCycle qcycle = ladder_cycle(ctx, anchors, q - s);
        const PointId p_q1 = anchors.at(s).prefix.points[static_cast<std::size_t>(q - s)];
        const Resources want{{ctx.origin}, {plane.line_through(p_q1, ctx.at_infinity(0))}};
        if (qcycle.k() != q * q + q || !verify_embedding(plane, qcycle).ok ||
            !(unused_resources(plane, qcycle) == want)) {
          flag("cycle Q" + where);
        }
        ++ladders;
      }
    }
  }
  if (ladders == 0) flag("no plane exercised the ladder");
  r.detail = r.pass ? std::to_string(spines) + " spines, " + std::to_string(paths) + " paths P, " +
                          std::to_string(ladders) + " cycles Q; all sets equal"
                    : problems.str();
  return r;
}

CriterionResult levi_certificates() {
  CriterionResult r{7, "levi-certificates", true, "", 0, ""};
  std::ostringstream detail;
  for (const Order& o : kOrders) {
    const Plane plane = build_projective_classical(make_field(o.p, o.k));
    const GraphStats stats = graph_stats(levi_graph(plane));
    const int q = plane.order();
    if (!stats.regular || stats.degree != q + 1 || stats.girth != 6 || stats.diameter != 3) {
      r.pass = false;
      detail << " PG(2," << q << "): degree " << stats.degree << " girth " << stats.girth << " diameter "
             << stats.diameter << ";";
    }
  }
  if (r.pass) detail << "PG(2,q) for all nine orders: (q+1)-regular, girth 6, diameter 3";
  r.detail = detail.str();
  return r;
}

CriterionResult ingestion(const AcceptanceOptions& options, const fs::path& scratch) {
  CriterionResult r{8, "file-ingestion", true, "", 0, ""};
  std::vector<std::pair<std::string, fs::path>> files;
  for (const Order& o : {Order{7, 1}, Order{3, 2}}) {
    const fs::path path = scratch / ("pg2_" + std::to_string(o.ipow()) + ".txt");
    auto args = generated("gen", "projective", o);
    args.insert(args.end(), {"--out", path.string()});
    if (run_cli(args).code != 0) {
      r.pass = false;
      r.detail += " could not write " + path.string() + ";";
    }
    files.emplace_back("saved PG(2," + std::to_string(o.ipow()) + ")", path);
  }
  bool external = false;
  if (options.data_dir && fs::exists(*options.data_dir / "nearfield9.txt")) {
    files.emplace_back("nearfield plane of order 9", *options.data_dir / "nearfield9.txt");
    external = true;
  }
  int sweeps = 0;
  for (const auto& [label, path] : files) {
    const CliRun check = run_cli({"validate", "--plane", path.string()});
    if (check.code != 0) {
      r.pass = false;
      r.detail += " " + label + " failed validation;";
      continue;
    }
    const Plane plane = load_plane(path);
    const int q = plane.order();
    for (const char* seed : {"", "5"}) {
      std::vector<std::string> args{"sweep", "--plane", path.string(), "--format", "json"};
      if (*seed) args.insert(args.end(), {"--seed", seed});
      const std::string problem = sweep_problem(run_cli(args), 3, q * q + q + 1);
      if (!problem.empty()) {
        r.pass = false;
        r.detail += " " + label + (*seed ? " (seeded)" : "") + ": " + problem + ";";
      }
      ++sweeps;
    }
  }
  if (r.pass) {
    r.detail = std::to_string(sweeps) + " full projective sweeps from files (saved PG(2,7), PG(2,9)" +
               (external ? ", nearfield plane of order 9" : "; nearfield file not found") + ")";
  }
  return r;
}

CriterionResult determinism(const AcceptanceOptions& options, const fs::path& scratch) {
  CriterionResult r{9, "determinism", true, "", 0, ""};
  std::vector<std::vector<std::string>> commands = {
      {"gen", "--kind", "projective", "--p", "3"},
      {"gen", "--kind", "affine", "--p", "2", "--k", "3"},
      {"validate", "--kind", "affine", "--p", "2", "--k", "2", "--format", "json"},
      {"embed", "--kind", "projective", "--p", "2", "--k", "2", "--cycle-k", "21"},
      {"embed", "--kind", "affine", "--p", "7", "--cycle-k", "40", "--format", "text", "--seed", "3"},
      {"sweep", "--kind", "projective", "--p", "5", "--format", "json"},
      {"sweep", "--kind", "affine", "--p", "3", "--k", "2", "--seed", "11"},
      {"oracle", "--kind", "projective", "--p", "2", "--range", "3..8"},
      {"export-dot", "--kind", "projective", "--p", "2"},
  };
  if (options.data_dir && fs::exists(*options.data_dir / "nearfield9.txt")) {
    commands.push_back({"sweep", "--plane", (*options.data_dir / "nearfield9.txt").string(), "--seed", "2"});
  }
  // Same command twice with --out, then compare the files too.
  const fs::path out_a = scratch / "det_a.json";
  const fs::path out_b = scratch / "det_b.json";

  auto read_or_empty = [](const fs::path& p) { return fs::exists(p) ? read_file(p) : std::string(); };
  auto run_once = [&](std::vector<std::string> args, const fs::path& stdout_file) -> std::string {
    if (options.tool) {
      std::string cmd = "'" + options.tool->string() + "'";
      for (const auto& a : args) cmd += " '" + a + "'";
      cmd += " > '" + stdout_file.string() + "' 2> /dev/null";
      if (std::system(cmd.c_str()) != 0) return std::string();
      return read_or_empty(stdout_file);
    }
    return run_cli(args).out;
  };

  int compared = 0;
  for (const auto& args : commands) {
    const std::string a = run_once(args, scratch / "stdout_a.txt");
    const std::string b = run_once(args, scratch / "stdout_b.txt");
    if (a != b || a.empty()) {
      r.pass = false;
      r.detail += " differs: " + join_args(args) + ";";
    }
    ++compared;
  }
  {
    std::vector<std::string> args{"embed", "--kind", "projective", "--p", "5", "--cycle-k", "31"};
    auto with_out = [&](const fs::path& p) {
      auto full = args;
      full.insert(full.end(), {"--out", p.string()});
      return full;
    };
    run_once(with_out(out_a), scratch / "stdout_a.txt");
    run_once(with_out(out_b), scratch / "stdout_b.txt");
    const std::string a = read_or_empty(out_a);
    if (a.empty() || a != read_or_empty(out_b)) {
      r.pass = false;
      r.detail += " --out files differ;";
    }
    ++compared;
  }
  if (r.pass) {
    r.detail = std::to_string(compared) + " commands run twice " +
               std::string(options.tool ? "as separate processes" : "in-process") + ", outputs byte-identical";
  }
  return r;
}

}  // namespace

std::string format_result(const CriterionResult& result) {
  std::ostringstream s;
  s << (result.pass ? "[PASS] " : "[FAIL] ") << result.id << " " << result.name << ": " << result.detail;
  return s.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& report,
                                           std::ostream* timings) {
  const fs::path scratch =
      fs::temp_directory_path() / ("planecycles-acceptance-" + std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(scratch);

  const std::vector<std::function<CriterionResult()>> criteria = {
      [] { return pancyclic_sweeps(1, "affine-pancyclicity", "affine", 10.0); },
      [] { return pancyclic_sweeps(2, "projective-pancyclicity", "projective", 15.0); },
      [] { return oracle_equivalence(); },
      [&] { return base_path_disjointness(options); },
      [&] { return partition_properties(options); },
      [&] { return resource_accounting(options); },
      [] { return levi_certificates(); },
      [&] { return ingestion(options, scratch); },
      [&] { return determinism(options, scratch); },
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r = {static_cast<int>(i) + 1, "criterion-" + std::to_string(i + 1), false, std::string("threw: ") + e.what(), 0, ""};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report << format_result(r) << "\n" << std::flush;
    if (timings) {
      *timings << "criterion " << r.id << ": " << std::fixed << std::setprecision(2) << r.seconds << " s";
      if (!r.timing.empty()) *timings << ", " << r.timing;
      *timings << "\n" << std::flush;
    }
    results.push_back(std::move(r));
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  return results;
}

}  // namespace planecycles
