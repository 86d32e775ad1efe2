#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hallbridge/dh.hpp"
#include "hallbridge/double.hpp"
#include "hallbridge/error.hpp"
#include "hallbridge/hall.hpp"

namespace hallbridge {

/// Bad command line or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string quiver_path;
  int q = 2;
  Weight max_dim;
  /// Bound for the suites that range over pairs of objects or complexes;
  /// defaults to max_dim capped at 1 per vertex.
  std::optional<Weight> pair_dim;
  std::vector<std::string> suites;
  Conventions conventions;
  int jobs = 1;
  std::string cache_dir;
  std::string out_path;

  Weight pair_bound() const;
};

/// Fixed suite names, in report order.
const std::vector<std::string>& suite_registry();

/// Throws UsageError unless cfg is runnable (q prime, known suites, ...).
void validate_config(const RunConfig& cfg);

struct Check {
  std::string name;
  std::string instance;
  bool pass = false;
  nlohmann::json lhs;  // set on failure
  nlohmann::json rhs;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  std::size_t failures() const;
};

struct AuditReport {
  /// "pass", "fail" or "inconclusive".
  std::string verdict;
  std::vector<Conventions> passing;
  /// Per assignment, per suite: did it pass.
  std::vector<std::pair<Conventions, std::vector<std::pair<std::string, bool>>>> table;
  /// Sites whose setting never changed any outcome.
  std::vector<std::string> indistinguishable;
  std::string diagnostic;
};

struct Counters {
  long long hall_tables_computed = 0;
  long long hall_numbers_computed = 0;
  long long hall_tables_from_cache = 0;
  long long orbit_searches = 0;
};

struct Report {
  nlohmann::json config;
  std::vector<SuiteReport> suites;
  std::optional<AuditReport> audit;
  /// Run metadata kept out of the deterministic report body.
  Counters counters;
  std::vector<std::pair<std::string, double>> seconds;

  bool all_pass() const;
  std::size_t check_count() const;
};

/// Everything needed to run checks for one quiver, q and convention
/// assignment.
class Workbench {
 public:
  Workbench(Quiver quiver, int q, Conventions conventions = {}, const std::string& cache_dir = {});
  /// Shares the engine and complexes of base, with other conventions.
  Workbench(Workbench& base, Conventions conventions);

  RepEngine& engine() { return *engine_; }
  HallAlgebra& hall() { return *hall_; }
  DrinfeldDouble& dbl() { return *double_; }
  ComplexSpace& complexes() { return *complexes_; }
  BridgelandAlgebra& dh() { return *dh_; }

  /// Runs one registered suite; lists of checks are in deterministic order.
  SuiteReport run(const std::string& suite, const Weight& max_dim, const Weight& pair_dim, int jobs);

 private:
  std::shared_ptr<RepEngine> engine_;
  std::shared_ptr<ComplexSpace> complexes_;
  std::unique_ptr<HallAlgebra> hall_;
  std::unique_ptr<DrinfeldDouble> double_;
  std::unique_ptr<BridgelandAlgebra> dh_;
};

Report run_suite(const RunConfig& cfg);
/// Tries all 8 bracket assignments on green, pairing and main.
AuditReport convention_audit(const RunConfig& cfg);
AuditReport convention_audit(Workbench& base, const Weight& max_dim, int jobs);

/// Deterministic report body (no timings, no counters).
nlohmann::json to_json(const Report& r);
nlohmann::json to_json(const AuditReport& a);
/// Timings and computation counters.
nlohmann::json metadata_json(const Report& r);
nlohmann::json config_json(const RunConfig& cfg);

nlohmann::json to_json(RepEngine& e, const HallElement& x);
nlohmann::json to_json(RepEngine& e, const TensorElement& x);
nlohmann::json to_json(RepEngine& e, const DHElement& x);
nlohmann::json to_json(RepEngine& e, const DoubleElement& x);
nlohmann::json to_json(RepEngine& e, const DoubleMonomial& m);

/// Structure constants of the double on monomial pairs with dims <= bound.
nlohmann::json double_constants(Workbench& wb, const Weight& bound);

/// Runs fn(i) for i in [0, n) on up to jobs threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace hallbridge
