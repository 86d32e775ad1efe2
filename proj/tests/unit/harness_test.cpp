#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "hallbridge/harness.hpp"
#include "support.hpp"

using namespace hb_test;

namespace {

std::string quiver_file(const std::string& name) { return std::string(HB_QUIVER_DIR) + "/" + name + ".json"; }

RunConfig config(const std::string& quiver, int q, Weight max_dim, std::vector<std::string> suites) {
  RunConfig c;
  c.quiver_path = quiver_file(quiver);
  c.q = q;
  c.max_dim = std::move(max_dim);
  c.suites = std::move(suites);
  return c;
}

// A2 isoclasses of dim (a, b) are classified by the rank of one matrix.
long long a2_classes(int a, int b) { return a < 0 || b < 0 ? 0 : std::min(a, b) + 1; }

}  // namespace

TEST(Harness, EmptySuiteListGivesNoChecks) {
  Report r = run_suite(config("a2", 2, {1, 1}, {}));
  EXPECT_EQ(r.check_count(), 0u);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(to_json(r)["summary"]["status"], "pass");
}

TEST(Harness, AssocCountsEveryQuadruple) {
  long long expect = 0;
  for (int l1 = 0; l1 <= 2; ++l1)
    for (int l2 = 0; l2 <= 2; ++l2)
      for (int x1 = 0; x1 <= l1; ++x1)
        for (int x2 = 0; x2 <= l2; ++x2)
          for (int y1 = 0; y1 <= l1 - x1; ++y1)
            for (int y2 = 0; y2 <= l2 - x2; ++y2)
              expect += a2_classes(l1, l2) * a2_classes(x1, x2) * a2_classes(y1, y2) * a2_classes(l1 - x1 - y1, l2 - x2 - y2);
  Report r = run_suite(config("a2", 2, {2, 2}, {"assoc"}));
  ASSERT_EQ(r.suites.size(), 1u);
  EXPECT_EQ(static_cast<long long>(r.suites[0].checks.size()), expect);
  EXPECT_TRUE(r.all_pass());
}

TEST(Harness, MainPassesAtOneOne) {
  for (int q : {2, 3}) {
    Report r = run_suite(config("a2", q, {1, 1}, {"main"}));
    EXPECT_GT(r.check_count(), 0u);
    EXPECT_TRUE(r.all_pass());
  }
}

TEST(Harness, ReportShape) {
  Report r = run_suite(config("a1", 3, {2}, {"assoc", "counting"}));
  nlohmann::json j = to_json(r);
  ASSERT_TRUE(j.contains("config") && j.contains("suites") && j.contains("summary"));
  EXPECT_EQ(j["summary"]["checks"], r.check_count());
  EXPECT_EQ(j["summary"]["failed"], 0);
  for (const auto& s : j["suites"])
    for (const auto& c : s["checks"]) {
      EXPECT_TRUE(c.contains("name") && c.contains("instance"));
      EXPECT_EQ(c["status"], "pass");
    }
}

TEST(Harness, AuditOnA2) {
  AuditReport a = convention_audit(config("a2", 2, {1, 1}, {}));
  EXPECT_EQ(a.verdict, "pass");
  EXPECT_NE(std::find(a.passing.begin(), a.passing.end(), Conventions{}), a.passing.end());
  EXPECT_EQ(a.table.size(), 8u);
  EXPECT_EQ(to_json(a)["passing"].size(), a.passing.size());
}

TEST(Harness, AuditOnA1) {
  AuditReport a = convention_audit(config("a1", 2, {2}, {}));
  EXPECT_EQ(a.verdict, "pass");
  EXPECT_NE(std::find(a.passing.begin(), a.passing.end(), Conventions{}), a.passing.end());
}

TEST(Harness, AuditWithNoObjectsIsInconclusive) {
  AuditReport a = convention_audit(config("a2", 2, {0, 0}, {}));
  EXPECT_EQ(a.verdict, "inconclusive");
  EXPECT_TRUE(a.passing.empty());
  EXPECT_FALSE(a.diagnostic.empty());
}

TEST(Harness, ReportsDoNotDependOnJobs) {
  RunConfig one = config("a2", 3, {1, 1}, {"counting", "lemma32", "double"});
  RunConfig two = one;
  two.jobs = 2;
  EXPECT_EQ(to_json(run_suite(one)), to_json(run_suite(two)));
}

TEST(Harness, CacheAvoidsRecomputation) {
  const auto dir = std::filesystem::temp_directory_path() / "hallbridge_harness_test_cache";
  std::filesystem::remove_all(dir);
  RunConfig c = config("a2", 2, {2, 2}, {"assoc"});
  c.cache_dir = dir.string();
  Report cold = run_suite(c);
  Report warm = run_suite(c);
  EXPECT_GT(cold.counters.hall_tables_computed, 0);
  EXPECT_LT(warm.counters.hall_tables_computed, cold.counters.hall_tables_computed);
  EXPECT_GT(warm.counters.hall_tables_from_cache, 0);
  EXPECT_EQ(to_json(cold), to_json(warm));
  std::filesystem::remove_all(dir);
}

TEST(Harness, UsageErrors) {
  EXPECT_THROW(validate_config(config("a2", 2, {1, 1}, {"nonsense"})), UsageError);
  EXPECT_THROW(validate_config(config("a2", 4, {1, 1}, {})), UsageError);
  EXPECT_THROW(run_suite(config("a2", 4, {1, 1}, {"assoc"})), UsageError);
  EXPECT_NO_THROW(validate_config(config("a2", 3, {1, 1}, suite_registry())));
}
