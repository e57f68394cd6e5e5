#include <set>

#include "doctest.h"
#include "dinf/checks.hpp"

using namespace dinf;

TEST_CASE("config validation") {
  CHECK_NOTHROW(Config::with(5, 5).validate());
  CHECK(Config::with(5, 5).t == 18);
  CHECK_THROWS_AS(Config::with(2, 3).validate(), AlgebraError);
  CHECK_THROWS_AS(Config::with(9, 3).validate(), AlgebraError);
  CHECK_THROWS_AS(Config::with(5, 3, 9).validate(), AlgebraError);
  CHECK_NOTHROW(Config::with(5, 3, 10).validate());
  CHECK_THROWS_AS(Config::with(5, 0).validate(), AlgebraError);
  auto c = Config::with(7, 2);
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), AlgebraError);
}

TEST_CASE("report status and exit codes") {
  Report r;
  r.add("a", true);
  r.add("b", Status::Indeterminate);
  r.finish();
  CHECK(r.status == Status::Indeterminate);
  CHECK(r.counterexample.empty());
  r.add("c", false, "here");
  r.finish();
  CHECK(r.status == Status::Fail);
  CHECK(r.counterexample == "c: here");
  Report empty;
  empty.finish();
  CHECK(empty.status == Status::Indeterminate);

  Report pass;
  pass.add("a", true);
  pass.finish();
  CHECK(exit_code({pass}) == 0);
  CHECK(exit_code({pass, empty}) == 0);
  CHECK(exit_code({empty, empty}) == 3);
  CHECK(exit_code({pass, r}) == 1);
  CHECK(to_json(r)["counterexample"] == "c: here");
  CHECK(to_markdown({pass, r}).find("| fail |") != std::string::npos);
}

TEST_CASE("check registry") {
  const auto& checks = acceptance_checks();
  CHECK(checks.size() == 13);
  std::set<std::string> ids, anchors = {"ring-core",   "module-catalog", "hom-engine",    "ar-quiver",
                                        "pp-lattice",  "cb-analysis",    "quilt-radical", "cli-io"};
  for (const auto& c : checks) {
    ids.insert(c.id);
    CHECK(anchors.count(c.anchor) == 1);
  }
  CHECK(ids.size() == checks.size());
  CHECK_THROWS_AS(run_checks(Config::with(5, 3), {"no-such-check"}), AlgebraError);
}

TEST_CASE("runs are ordered and deterministic") {
  auto cfg = Config::with(5, 3);
  std::vector<std::string> ids = {"infinite-ar", "duality", "socle-models", "ring-identities", "indecomposability"};
  auto a = run_checks(cfg, ids, 1), b = run_checks(cfg, ids, 4);
  REQUIRE(a.size() == ids.size());
  CHECK(a[0].check == "ring-identities");
  CHECK(a[1].check == "socle-models");
  CHECK(a.back().check == "indecomposability");
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    CHECK(a[i].status == Status::Pass);
    CHECK(a[i].depth == cfg.t);
    CHECK(a[i].k_max <= cfg.k_max);
  }
}

TEST_CASE("checks over another field") {
  auto cfg = Config::with(7, 3);
  for (const auto& r : run_checks(cfg, {"ring-identities", "catalog-integrity", "edges-corays", "quilt-radical"})) {
    CAPTURE(r.check);
    CAPTURE(r.counterexample);
    CHECK(r.status == Status::Pass);
  }
}
