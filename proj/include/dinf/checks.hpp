#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/radical.hpp"

namespace dinf {

struct Config {
  unsigned p = 5;
  unsigned k_max = 5;
  int t = 18;  // 2 k_max + 8 unless set
  unsigned n_max = 10;
  std::uint64_t seed = 17;
  std::string format = "json";

  /// Defaults for the given k_max with the depth derived from it.
  static Config with(unsigned p, unsigned k_max, std::optional<int> t = std::nullopt);
  /// Throws AlgebraError unless p is an odd prime and t >= 2 k_max + 4.
  void validate() const;
  PrimeField field() const { return PrimeField(p); }
};

nlohmann::json to_json(const Config& c);

struct Fact {
  std::string name;
  Status status = Status::Fail;
  std::string detail;
};

/// Result of one check. Facts verified in a finite window are marked
/// "window-verified"; facts that hold by construction are "symbolic".
struct Report {
  std::string check;
  std::string title;
  std::string anchor;
  std::string mode = "window-verified";
  Status status = Status::Indeterminate;
  int depth = 0;
  unsigned k_max = 0;
  std::vector<Fact> facts;
  std::string counterexample;  // first failing fact
  nlohmann::json data;

  void add(std::string name, bool holds, std::string detail = "");
  void add(std::string name, Status s, std::string detail = "");
  /// Fail if any fact fails, indeterminate if any is indeterminate.
  void finish();
};

nlohmann::json to_json(const Report& r);
std::string to_markdown(const std::vector<Report>& rs);
/// Exit code for a run: 1 on any fail, 3 when every report is indeterminate.
int exit_code(const std::vector<Report>& rs);

struct CheckSpec {
  std::string id;
  std::string title;
  std::string anchor;
  unsigned k_cap;  // largest parameter the check uses
  std::function<void(const Config&, Report&)> run;
};

/// The thirteen acceptance checks, in order.
const std::vector<CheckSpec>& acceptance_checks();
Report run_check(const CheckSpec& spec, const Config& cfg);
/// Runs the selected checks (all when empty) on up to `jobs` threads; reports
/// come back in check order.
std::vector<Report> run_checks(const Config& cfg, const std::vector<std::string>& ids = {}, unsigned jobs = 1);

}  // namespace dinf
