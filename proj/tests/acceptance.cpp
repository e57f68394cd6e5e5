#include <chrono>
#include <cstdio>

#include "dinf/checks.hpp"

using namespace dinf;

int main() {
  Config cfg = Config::with(5, 6);
  cfg.validate();
  int failed = 0;
  double total = 0;
  for (std::size_t i = 0; i < acceptance_checks().size(); ++i) {
    const auto& spec = acceptance_checks()[i];
    auto t0 = std::chrono::steady_clock::now();
    Report r = run_check(spec, cfg);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += s;
    bool pass = r.status == Status::Pass;
    failed += !pass;
    std::printf("criterion %2zu %s  %-18s k<=%u t=%d  %zu facts  %.1fs  %s\n", i + 1, pass ? "PASS" : "FAIL",
                spec.id.c_str(), r.k_max, r.depth, r.facts.size(), s, spec.title.c_str());
    if (!pass) std::printf("    %s: %s\n", to_string(r.status).c_str(), r.counterexample.c_str());
  }
  std::printf("%d of %zu criteria failed, %.1fs\n", failed, acceptance_checks().size(), total);
  return failed ? 1 : 0;
}
