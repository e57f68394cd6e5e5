#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dinf/ar.hpp"
#include "dinf/cb.hpp"
#include "dinf/checks.hpp"
#include "dinf/quilt.hpp"

using namespace dinf;
using nlohmann::json;

namespace {

struct Output {
  std::string text;
  int code = 0;
};

Output reports_out(const std::vector<Report>& rs, const Config& cfg) {
  if (cfg.format == "md") return {to_markdown(rs), exit_code(rs)};
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return {json{{"config", to_json(cfg)}, {"reports", a}}.dump(2) + "\n", exit_code(rs)};
}

Output json_out(const json& j, int code = 0) { return {j.dump(2) + "\n", code}; }

json hom_json(const HomWindow& w) {
  json basis = json::array();
  for (const auto& m : w.basis) basis.push_back(m.to_json());
  return {{"source", w.source->name()},
          {"target", w.target->name()},
          {"depth", w.depth},
          {"degrees", w.degrees},
          {"dims", w.dims},
          {"basis", basis},
          {"stable", w.stable},
          {"certificate", {{"t0", w.certificate.t0}, {"answers", w.certificate.answers}}}};
}

json collapse_json(const CollapseStudy& s) {
  json classes = json::array();
  for (std::size_t i = 0; i < s.small.classes.size(); ++i)
    classes.push_back({{"labels", s.small.classes[i].labels}, {"group", s.group_of[i]}});
  return {{"seed", s.seed},
          {"params",
           {{"k_core", s.params.k_core},
            {"t_core", s.params.t_core},
            {"k_measure", s.params.k_measure},
            {"t_measure", s.params.t_measure}}},
          {"chain", s.small.chain},
          {"classes", classes},
          {"groups", s.groups}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CM modules over F[x,y]/(x^2 y): catalog, Hom, patterns, AR quiver, CB ranks, quilt and radical"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  std::optional<int> depth;
  std::string out_file;
  unsigned jobs = 1;
  int window = -1;
  app.add_option("--prime", cfg.p, "odd prime p")->capture_default_str();
  app.add_option("--kmax", cfg.k_max, "largest family parameter")->capture_default_str();
  app.add_option("--depth", depth, "truncation depth t (default 2*kmax+8, at least 2*kmax+4)");
  app.add_option("--nmax", cfg.n_max, "largest radical power")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--format", cfg.format, "json, dot or md")
      ->check(CLI::IsMember({"json", "dot", "md"}))
      ->capture_default_str();
  app.add_option("--out", out_file, "write output to FILE");
  app.add_option("--window", window, "degree window for patterns and radical tables");

  std::string a1, a2, chain;
  std::vector<std::string> only;
  auto* ring = app.add_subcommand("ring-check", "ring identities and socle models");
  auto* catalog = app.add_subcommand("catalog", "catalog modules as JSON");
  catalog->add_option("module", a1, "one module, e.g. M_2");
  auto* hom = app.add_subcommand("hom", "graded Hom window");
  hom->add_option("M", a1)->required();
  hom->add_option("N", a2)->required();
  auto* pointed = app.add_subcommand("pointed", "is there a pointed map SRC -> DST");
  pointed->add_option("SRC", a1, "e.g. \"(S, x)\"")->required();
  pointed->add_option("DST", a2)->required();
  auto* pat = app.add_subcommand("pattern", "pattern window of a pointed module");
  pat->add_option("SEED", a1)->required();
  auto* interval = app.add_subcommand("interval", "lattice checks on a pattern window");
  interval->add_option("SEED", a1)->required();
  auto* coll = app.add_subcommand("collapse", "finite-length collapse of a pattern interval");
  coll->add_option("SEED", a1)->required();
  coll->add_option("--chain", chain, "expected order type, e.g. \"1 + Z + w*\"");
  auto* cb = app.add_subcommand("cb-table", "Cantor-Bendixson ranks with minimal pairs");
  auto* quiver = app.add_subcommand("quiver-verify", "irreducible maps and AR sequences");
  auto* quilt = app.add_subcommand("quilt", "compactified quiver");
  auto* radical = app.add_subcommand("radical", "radical powers and the nilpotency evidence");
  radical->add_option("M", a1, "source (default S)");
  radical->add_option("N", a2, "target (default S)");
  auto* all = app.add_subcommand("verify-all", "every acceptance check");
  all->add_option("--only", only, "check ids");
  all->add_option("--jobs", jobs, "threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out;
  try {
    cfg.t = depth.value_or(2 * static_cast<int>(cfg.k_max) + 8);
    cfg.validate();
    PrimeField f = cfg.field();
    auto win = [&](int def) { return window >= 0 ? window : def; };

    if (*ring) {
      out = reports_out(run_checks(cfg, {"ring-identities", "socle-models"}), cfg);
    } else if (*catalog) {
      if (!a1.empty()) {
        out = json_out(catalog_json(f, parse_family_id(a1), cfg.t));
      } else {
        json a = json::array();
        for (const auto& id : catalog_ids(cfg.k_max)) a.push_back(catalog_json(f, id, cfg.t));
        out = json_out(a);
      }
    } else if (*hom) {
      out = json_out(hom_json(hom_window(make(f, parse_family_id(a1)), make(f, parse_family_id(a2)), cfg.t)));
    } else if (*pointed) {
      auto s = parse_pointed(f, a1), d = parse_pointed(f, a2);
      auto r = pointed_exists(s.module, s.point, d.module, d.point, cfg.t);
      json j = {{"source", s.label},
                {"target", d.label},
                {"exists", to_string(r.verdict)},
                {"status", r.verdict == Verdict::Indeterminate ? "indeterminate" : "pass"},
                {"depth", cfg.t},
                {"certificate", {{"t0", r.certificate.t0}, {"answers", r.certificate.answers}}}};
      if (r.witness) j["witness"] = r.witness->to_json();
      out = json_out(j, r.verdict == Verdict::Indeterminate ? 3 : 0);
    } else if (*pat || *interval) {
      PointedOracle o;
      auto P = pattern(parse_pointed(f, a1), cfg.k_max, win(cfg.k_max + 3), o);
      if (*interval) {
        auto w = interval_window(P, o, 40, 20, cfg.seed);
        out = json_out({{"seed", a1},
                        {"nodes", w.nodes},
                        {"sum_checks", w.sum_checks},
                        {"sum_trivial", w.sum_trivial},
                        {"meet_checks", w.meet_checks},
                        {"meets_are_intersections", w.meets_are_intersections},
                        {"triples", w.triples},
                        {"distributive", w.distributive},
                        {"join_irreducible", w.join_irreducible},
                        {"failures", w.failures},
                        {"status", w.ok() ? "pass" : "fail"}},
                       w.ok() ? 0 : 1);
      } else {
        out = cfg.format == "dot" ? Output{poset_dot(P), 0} : json_out(poset_json(P));
      }
    } else if (*coll) {
      PointedOracle o;
      auto s = collapse_study(parse_pointed(f, a1), CollapseParams::from_kmax(std::max(2u, cfg.k_max)), o);
      json j = collapse_json(s);
      int code = 0;
      if (!chain.empty()) {
        auto m = match_chain(s, parse_chain(chain), {}, o);
        j["expected"] = chain;
        j["derivative"] = chain_derivative(parse_chain(chain)).to_string();
        j["match"] = m.ok();
        j["failures"] = m.failures;
        code = m.ok() ? 0 : 1;
      }
      out = json_out(j, code);
    } else if (*cb) {
      PointedOracle o;
      auto t = cb_table(f, std::max(2u, cfg.k_max), win(std::max(8, 2 * static_cast<int>(cfg.k_max) + 4)), o);
      out = cfg.format == "md" ? Output{to_markdown(t), t.ok() ? 0 : 1} : json_out(to_json(t), t.ok() ? 0 : 1);
    } else if (*quiver) {
      if (cfg.format == "dot")
        out = {quiver_dot(f, cfg.k_max), 0};
      else
        out = reports_out(run_checks(cfg, {"edges-corays", "ar-sequences", "infinite-ar"}), cfg);
    } else if (*quilt) {
      auto q = build_quilt(f, std::max(2u, cfg.k_max));
      if (cfg.format == "dot") {
        out = {quilt_dot(q), 0};
      } else {
        json j = quilt_json(q), sq = json::array(), rev = json::array();
        bool ok = true;
        for (unsigned K = 1; K <= std::min(4u, cfg.k_max); ++K) {
          auto s = verify_squares(f, K, cfg.t);
          auto r = revolution(f, K);
          ok = ok && s.ok() && r.image_of_one == "x";
          sq.push_back({{"K", K}, {"ok", s.ok()}, {"details", s.details}});
          rev.push_back({{"K", K}, {"path", r.path}, {"image_of_one", r.image_of_one}});
        }
        j["squares"] = sq;
        j["revolutions"] = rev;
        out = json_out(j, ok ? 0 : 1);
      }
    } else if (*radical) {
      FamilyId m = a1.empty() ? FamilyId{Family::S} : parse_family_id(a1);
      FamilyId n = a2.empty() ? FamilyId{Family::S} : parse_family_id(a2);
      unsigned k = std::min(3u, cfg.k_max);
      int t = win(6);
      auto w = rad_power(f, m, n, cfg.n_max, k, t);
      auto nil = nil_index_report(f, k, cfg.n_max, t);
      Status st = nil.status();
      out = json_out({{"window", to_json(w)}, {"nil_index", to_json(nil)}},
                     st == Status::Fail ? 1 : st == Status::Indeterminate ? 3 : 0);
    } else if (*all) {
      out = reports_out(run_checks(cfg, only, jobs), cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (out_file.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream os(out_file);
    if (!os) {
      std::cerr << "error: cannot write " << out_file << "\n";
      return 2;
    }
    os << out.text;
  }
  return out.code;
}
