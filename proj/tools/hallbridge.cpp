// hallbridge: command-line front end for the Hall algebra workbench.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hallbridge/harness.hpp"

using namespace hallbridge;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string quiver;
  int q = 2;
  std::string max_dim;
  std::string pair_dim;
  std::optional<std::string> suites;
  int jobs = 1;
  std::string cache;
  std::string out;
  std::string convention;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Weight parse_dims(const std::string& text, const std::string& flag) {
  try {
    return parse_weight(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.quiver_path = o.quiver;
  cfg.q = o.q;
  if (o.max_dim.empty()) throw UsageError("--max-dim is required");
  cfg.max_dim = parse_dims(o.max_dim, "--max-dim");
  if (!o.pair_dim.empty()) cfg.pair_dim = parse_dims(o.pair_dim, "--pair-dim");
  cfg.suites = o.suites ? split(*o.suites) : suite_registry();
  try {
    cfg.conventions = parse_conventions(o.convention);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  cfg.jobs = o.jobs;
  cfg.cache_dir = o.cache;
  cfg.out_path = o.out;
  validate_config(cfg);
  return cfg;
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

Workbench open(const RunConfig& cfg) {
  Quiver quiver = [&] {
    try {
      return Quiver::from_file(cfg.quiver_path);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  if (cfg.max_dim.size() != static_cast<size_t>(quiver.num_vertices())) throw UsageError("--max-dim length does not match the quiver");
  return Workbench(std::move(quiver), cfg.q, cfg.conventions, cfg.cache_dir);
}

int cmd_validate(const RunConfig& cfg) {
  Workbench wb = open(cfg);
  const Quiver& q = wb.engine().quiver();
  json j;
  j["quiver"] = json::parse(q.to_json());
  j["q"] = cfg.q;
  j["projectives"] = json::array();
  for (int i = 0; i < q.num_vertices(); ++i) j["projectives"].push_back(q.projective_dim(i));
  json euler = json::array();
  for (int i = 0; i < q.num_vertices(); ++i) {
    json row = json::array();
    for (int k = 0; k < q.num_vertices(); ++k) row.push_back(q.euler(q.unit(i), q.unit(k)));
    euler.push_back(row);
  }
  j["euler_form"] = euler;
  j["config"] = config_json(cfg);
  emit(j, cfg.out_path);
  return kExitPass;
}

int cmd_enumerate(const RunConfig& cfg) {
  Workbench wb = open(cfg);
  RepEngine& e = wb.engine();
  json out = json::array();
  for (ClassId m : e.enumerate_isoclasses(cfg.max_dim)) {
    const Resolution& r = e.resolution(m);
    out.push_back({{"key", e.key(m).text},
                   {"dim", e.dim(m)},
                   {"aut", e.aut_count(m)},
                   {"cover", r.cover_mult},
                   {"syzygy", r.syzygy_mult}});
  }
  emit(out, cfg.out_path);
  return kExitPass;
}

int cmd_table(const RunConfig& cfg) {
  Workbench wb = open(cfg);
  RepEngine& e = wb.engine();
  json out = json::array();
  for (ClassId l : e.enumerate_isoclasses(cfg.max_dim)) {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    for (const auto& [mn, g] : e.hall_table(l).counts) rows.emplace_back(e.key(mn.first).text, e.key(mn.second).text, g);
    std::sort(rows.begin(), rows.end());
    json entries = json::array();
    for (auto& [m, n, g] : rows) entries.push_back({{"M", m}, {"N", n}, {"g", g}});
    out.push_back({{"L", e.key(l).text}, {"entries", entries}});
  }
  emit(out, cfg.out_path);
  return kExitPass;
}

void write_metadata(const Report& r, const std::string& out) {
  json meta = metadata_json(r);
  if (out.empty()) {
    std::cerr << meta.dump() << "\n";
    return;
  }
  std::ofstream f(out + ".meta.json");
  f << meta.dump(2) << "\n";
}

int cmd_verify(const RunConfig& cfg) {
  Report r = run_suite(cfg);
  emit(to_json(r), cfg.out_path);
  write_metadata(r, cfg.out_path);
  std::cerr << r.check_count() << " checks, " << (r.all_pass() ? "all pass" : "FAILURES") << "\n";
  return r.all_pass() ? kExitPass : kExitFail;
}

int cmd_audit(const RunConfig& cfg) {
  Report r;
  r.config = config_json(cfg);
  r.audit = convention_audit(cfg);
  emit(to_json(r), cfg.out_path);
  std::cerr << "audit: " << r.audit->verdict << "\n";
  if (r.audit->verdict == "fail") std::cerr << r.audit->diagnostic;
  return r.audit->verdict == "fail" ? kExitFail : kExitPass;
}

int cmd_double_constants(const RunConfig& cfg) {
  Workbench wb = open(cfg);
  emit(double_constants(wb, cfg.max_dim), cfg.out_path);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hall algebra workbench for quiver representations over small finite fields"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--quiver", o.quiver, "Quiver JSON file")->required();
    sub->add_option("--q", o.q, "Field size (prime)");
    sub->add_option("--max-dim", o.max_dim, "Dimension bound, e.g. 2,2")->required();
    sub->add_option("--pair-dim", o.pair_dim, "Bound for pair suites (default: max-dim capped at 1)");
    sub->add_option("--suites", o.suites, "Comma-separated suite names");
    sub->add_option("--jobs", o.jobs, "Worker threads");
    sub->add_option("--cache", o.cache, "Hall-number cache directory");
    sub->add_option("--out", o.out, "Output file (default: stdout)");
    sub->add_option("--convention", o.convention, "Bracket overrides, e.g. pairing=angle,tensor=symmetric");
  };

  std::map<std::string, std::function<int(const RunConfig&)>> commands = {
      {"validate", cmd_validate}, {"enumerate", cmd_enumerate}, {"table", cmd_table},
      {"verify", cmd_verify},     {"audit", cmd_audit},         {"double-constants", cmd_double_constants},
  };
  const std::map<std::string, std::string> help = {
      {"validate", "Check a quiver file and configuration"},
      {"enumerate", "List isoclasses within max-dim"},
      {"table", "Print Hall numbers for every L within max-dim"},
      {"verify", "Run verification suites and write a JSON report"},
      {"audit", "Find the bracket conventions under which green, pairing and main pass"},
      {"double-constants", "Export structure constants of the Drinfeld double"},
  };
  for (const auto& [name, fn] : commands) add_common(app.add_subcommand(name, help.at(name)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    RunConfig cfg = make_config(o);
    for (const auto& [name, fn] : commands)
      if (app.got_subcommand(name)) return fn(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
