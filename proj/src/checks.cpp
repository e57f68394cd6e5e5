#include "dinf/checks.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "dinf/ar.hpp"
#include "dinf/cb.hpp"
#include "dinf/quilt.hpp"

namespace dinf {

Config Config::with(unsigned p, unsigned k_max, std::optional<int> t) {
  Config c;
  c.p = p;
  c.k_max = k_max;
  c.t = t.value_or(2 * static_cast<int>(k_max) + 8);
  return c;
}

void Config::validate() const {
  if (p == 2) throw AlgebraError("p = 2 is not supported");
  PrimeField check(p);
  if (k_max == 0) throw AlgebraError("k_max must be positive");
  if (t < 2 * static_cast<int>(k_max) + 4)
    throw AlgebraError("depth " + std::to_string(t) + " is below 2*k_max+4 = " + std::to_string(2 * k_max + 4));
  if (n_max == 0) throw AlgebraError("n_max must be positive");
  if (format != "json" && format != "dot" && format != "md") throw AlgebraError("unknown format " + format);
}

nlohmann::json to_json(const Config& c) {
  return {{"prime", c.p}, {"k_max", c.k_max}, {"depth", c.t}, {"n_max", c.n_max}, {"seed", c.seed}};
}

void Report::add(std::string name, bool holds, std::string detail) {
  add(std::move(name), holds ? Status::Pass : Status::Fail, std::move(detail));
}

void Report::add(std::string name, Status s, std::string detail) {
  facts.push_back({std::move(name), s, std::move(detail)});
}

void Report::finish() {
  status = Status::Pass;
  for (const auto& f : facts) {
    if (f.status == Status::Fail) {
      status = Status::Fail;
      if (counterexample.empty()) counterexample = f.name + (f.detail.empty() ? "" : ": " + f.detail);
    } else if (f.status == Status::Indeterminate && status == Status::Pass) {
      status = Status::Indeterminate;
    }
  }
  if (facts.empty()) status = Status::Indeterminate;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json facts = nlohmann::json::array();
  for (const auto& f : r.facts) {
    nlohmann::json j = {{"fact", f.name}, {"status", to_string(f.status)}};
    if (!f.detail.empty()) j["detail"] = f.detail;
    facts.push_back(j);
  }
  nlohmann::json j = {{"check", r.check}, {"title", r.title},   {"anchor", r.anchor}, {"mode", r.mode},
                      {"status", to_string(r.status)},          {"depth", r.depth},   {"k_max", r.k_max},
                      {"facts", facts}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (!r.data.is_null()) j["data"] = r.data;
  return j;
}

std::string to_markdown(const std::vector<Report>& rs) {
  std::ostringstream os;
  os << "| check | status | mode | k_max | depth | facts | counterexample |\n|---|---|---|---|---|---|---|\n";
  for (const auto& r : rs) {
    std::size_t held = std::count_if(r.facts.begin(), r.facts.end(), [](const Fact& f) { return f.status == Status::Pass; });
    os << "| " << r.check << " | " << to_string(r.status) << " | " << r.mode << " | " << r.k_max << " | " << r.depth
       << " | " << held << "/" << r.facts.size() << " | " << r.counterexample << " |\n";
  }
  return os.str();
}

int exit_code(const std::vector<Report>& rs) {
  bool any_fail = false, all_indet = !rs.empty();
  for (const auto& r : rs) {
    any_fail = any_fail || r.status == Status::Fail;
    all_indet = all_indet && r.status == Status::Indeterminate;
  }
  return any_fail ? 1 : all_indet ? 3 : 0;
}

namespace {

std::string in_ambient(const Realization& r, const Elem& e) {
  return r.ambient->to_string(apply_images(r.module, r.images, e));
}

Status truth(Truth t) {
  return t == Truth::True ? Status::Pass : t == Truth::False ? Status::Fail : Status::Indeterminate;
}

// ------------------------------------------------------------ ring-core

void ring_identities(const Config& c, Report& r) {
  PrimeField f = c.field();
  for (unsigned t : {5u, static_cast<unsigned>(c.t)}) {
    std::string at = " (depth " + std::to_string(t) + ")";
    auto u = qs::u(f, t), e = qs::e(f, t);
    r.add("x^2*y = 0" + at, nf("x^2*y", f).is_zero());
    r.add("u^2 = u^3" + at, truth(loc_is_zero(u.pow(2) - u.pow(3))));
    r.add("e^2 = e" + at, truth(loc_is_zero(e * e - e)));
    r.add("e*y = 0" + at, truth(loc_is_zero(e * SElem::y(f))));
    r.add("1 - e = y(2x+y)/(x+y)^2" + at,
          truth(loc_is_zero((qs::one(f, t) - e) - qs::parse("y*(2*x+y)", 2, f, t))));
    r.add("u != 0" + at, loc_is_zero(u) == Truth::False);
  }
}

void socle_dims(const Config& c, Report& r) {
  PrimeField f = c.field();
  auto s = model_s_mod_x_plus_y(f).socle_dim(), sp = model_sprime_mod_x_plus_y(f).socle_dim();
  r.add("socle of S/(x+y)S has dim 1", s == 1, std::to_string(s));
  r.add("socle of S'/(x+y)S' has dim 2", sp == 2, std::to_string(sp));
  r.data = {{"S", s}, {"S'", sp}};
  r.mode = "symbolic";
}

// ------------------------------------------------------------ module-catalog

void catalog_integrity(const Config& c, Report& r) {
  PrimeField f = c.field();
  for (const auto& id : catalog_ids(r.k_max)) {
    auto m = make(f, id);
    std::string n = to_string(id);
    bool rel = std::all_of(m->relations().begin(), m->relations().end(), [&](const Elem& e) { return m->is_zero(e); });
    r.add(n + ": relations vanish", rel);
    r.add(n + ": socle = 0", m->socle(std::max(m->max_relation_degree() + 12, c.t)).empty());
    if (id.family == Family::M) {
      r.add(n + ": x^2 M = 0", element_eval(*m, "m*x^2").is_zero() && element_eval(*m, "n*x^2").is_zero());
    }
    if (id.parameterized()) {
      auto cert = realize(f, id, c.t).certificate;
      r.add(n + ": two-sided realization", cert.ok(), cert.failures.empty() ? "" : cert.failures.front());
    }
  }
  r.add("B x^2 = 0", element_eval(*make(f, {Family::B}), "b*x^2").is_zero());
  r.add("C x = 0", element_eval(*make(f, {Family::C}), "c*x").is_zero());
}

void duality_table(const Config& c, Report& r) {
  PrimeField f = c.field();
  nlohmann::json table = nlohmann::json::object();
  auto expect = [](FamilyId id) {
    if (id.family == Family::X) id.family = Family::Y;
    else if (id.family == Family::Y) id.family = Family::X;
    return id;
  };
  for (const auto& id : catalog_ids(r.k_max)) {
    auto d = dual(f, id, static_cast<unsigned>(c.seed));
    std::string got = d.match ? to_string(*d.match) : "none";
    table[to_string(id)] = got;
    r.add("dual(" + to_string(id) + ") = " + to_string(expect(id)), d.match && *d.match == expect(id), got);
    if (id.parameterized()) r.add("dual(" + to_string(id) + ") iso verified", d.iso_verified);
  }
  r.data = table;
}

// ------------------------------------------------------------ ar-quiver

void edges_and_corays(const Config& c, Report& r) {
  PrimeField f = c.field();
  for (unsigned id = 1; id <= kEdgeCount; ++id) {
    unsigned k0 = (id == 2 || id == 6) ? 2 : 1;
    bool ok = true;
    std::string why;
    for (unsigned k = k0; k <= std::max(k0, r.k_max); ++k) {
      auto e = edge(f, id, k);
      if (e.morphism.is_zero() || !e.morphism.degree()) {
        ok = false;
        why = "k = " + std::to_string(k);
      }
    }
    r.add("edge " + std::to_string(id) + " (" + edge_name(id) + ") well defined and nonzero", ok, why);
  }
  for (unsigned k = 1; k < r.k_max; ++k) {
    auto yk1 = make(f, {Family::Y, k + 1}), nk = make(f, {Family::N, k}), yk = make(f, {Family::Y, k});
    auto h = compose(Morphism::parse(yk1, nk, {"m*y", "n"}), Morphism::parse(nk, yk, {"m", "n"}));
    auto rs = realize(f, {Family::Y, k + 1}, 8), rt = realize(f, {Family::Y, k}, 8);
    bool ok = true;
    for (unsigned i = 0; i < 2; ++i) ok = ok && in_ambient(rs, Elem::term(f, i)) == in_ambient(rt, h.images()[i]);
    r.add("Y_" + std::to_string(k + 1) + " -> N_" + std::to_string(k) + " -> Y_" + std::to_string(k) +
              " is the ideal inclusion",
          ok);
  }
  for (unsigned k = 2; k <= r.k_max; ++k) {
    auto mk = make(f, {Family::M, k}), xk = make(f, {Family::X, k}), mk1 = make(f, {Family::M, k - 1});
    auto h = compose(Morphism::parse(mk, xk, {"m*y", "n"}), Morphism::parse(xk, mk1, {"m", "n"}));
    auto rs = realize(f, {Family::M, k}, 8), rt = realize(f, {Family::M, k - 1}, 8);
    bool ok = true;
    for (unsigned i = 0; i < 2; ++i) ok = ok && in_ambient(rs, Elem::term(f, i)) == in_ambient(rt, h.images()[i]);
    r.add("M_" + std::to_string(k) + " -> X_" + std::to_string(k) + " -> M_" + std::to_string(k - 1) +
              " is the ideal inclusion",
          ok);
  }
  const unsigned K = std::max(3u, r.k_max);
  auto cr = coray_limit_check(f, K, 6);
  r.add("y-coray stable image is xS = D", cr.y_coray_is_D);
  r.add("m-coray stable image is xyS = C", cr.m_coray_is_C);
  r.add("x powers in the coray image", cr.x_powers_in_image);
  r.add("y^K leaves the coray image", cr.y_power_leaves);
  bool shape = !cr.stable_basis.empty();
  std::set<std::string> got(cr.stable_basis.begin(), cr.stable_basis.end()), want;
  int top = 0;
  for (const auto& s : cr.stable_basis) top = std::max(top, static_cast<int>(nf(s, f).degree()));
  for (int d = 1; d <= top; ++d) {
    want.insert(to_string(Monomial{static_cast<unsigned>(d), 0}));
    want.insert(to_string(Monomial{1, static_cast<unsigned>(d - 1)}));
  }
  shape = shape && got == want;
  std::string basis;
  for (const auto& s : cr.stable_basis) basis += (basis.empty() ? "" : ", ") + s;
  r.add("coray stable window = {x^i} u {x y^j}", shape, basis);
  r.data = {{"coray_stage", K}, {"stable_basis", cr.stable_basis}};
}

void ar_sequences(const Config& c, Report& r) {
  PrimeField f = c.field();
  ModulePtr ring = make(f, {Family::S});
  const unsigned kw = std::min(3u, r.k_max);
  for (auto [fam, k] : ar_sequence_ids(r.k_max)) {
    auto s = ar_sequence(f, fam, k);
    auto ex = verify_exact(s, c.t);
    r.add(s.id + ": composite zero", ex.composite_zero);
    r.add(s.id + ": exact with additive dimensions", ex.ok(), ex.failures.empty() ? "" : ex.failures.front());
    bool not_s = !same_module(*s.left, *ring);
    for (int sh = -c.t; sh <= c.t; ++sh) not_s = not_s && !same_module(*s.right, *ring->shifted(sh));
    r.add(s.id + ": S is not an end term", not_s);
    auto as = almost_split_check(f, s, kw, 6);
    r.add(s.id + ": almost split in the (" + std::to_string(kw) + ", 6) window", as.ok(),
          as.failures.empty() ? std::to_string(as.factored) + "/" + std::to_string(as.tested) : as.failures.front());
  }
}

// ------------------------------------------------------------ pp-lattice

std::size_t count(const std::vector<char>& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), 1)); }

bool subset(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

void pattern_x2(const Config& c, Report& r) {
  PrimeField f = c.field();
  PointedOracle o;
  auto P = pattern(parse_pointed(f, "(S, x^2)"), r.k_max, 8, o);
  auto s = P.find("(S, x^2)"), x1 = P.find("(X_1, m*x^2)"), n1 = P.find("(N_1, m*x^2)"), y = P.find("(Y_1, n*x^2)");
  r.add("(S, x^2) is the top", s && *s == P.top);
  if (!s || !x1 || !n1 || !y) {
    r.add("window contains (X_1, m*x^2), (N_1, m*x^2), (Y_1, n*x^2)", false);
    return;
  }
  std::vector<std::size_t> below_top, below_x1;
  for (auto [u, l] : P.covers) {
    if (u == *s) below_top.push_back(l);
    if (u == *x1) below_x1.push_back(l);
  }
  r.add("(S, x^2) covers exactly (X_1, m*x^2)", below_top == std::vector<std::size_t>{*x1});
  r.add("(X_1, m*x^2) covers exactly (N_1, m*x^2)", below_x1 == std::vector<std::size_t>{*n1});
  auto lower = psum(parse_pointed(f, "(A, x^4)"), parse_pointed(f, "(S, x^3)"));
  auto dl = down_set(P, o, lower);
  std::vector<char> dy(P.nodes.size());
  for (std::size_t j = 0; j < P.nodes.size(); ++j) dy[j] = P.leq[j][*y];
  r.add("(A, x^4) + (S, x^3) is the largest formula strictly below (Y_1, n*x^2)",
        subset(dl, dy) && count(dy) == count(dl) + 1 && !dl[*y]);
  bool bounded = true;
  for (std::size_t i = 0; i < P.nodes.size(); ++i) bounded = bounded && P.leq[i][P.top] && P.leq[P.bottom][i];
  r.add("window is bounded by the seed and 0", bounded);
  for (const char* seed : {"(S, x^2)", "(X_1, n)", "(C, x*y)"}) {
    PointedOracle oi;
    auto W = pattern(parse_pointed(f, seed), std::min(3u, r.k_max), 6, oi);
    auto iw = interval_window(W, oi, 30, 15, c.seed);
    std::string why = iw.failures.empty() ? "" : iw.failures.front();
    r.add(std::string("interval window of ") + seed + " is distributive", iw.distributive && iw.meets_are_intersections, why);
    r.add(std::string("sums are trivial on ") + seed + " (" + std::to_string(iw.sum_checks) + " pairs)",
          iw.sum_trivial && iw.join_irreducible && iw.sum_checks > 0, why);
  }
  r.data = {{"nodes", P.nodes.size()}, {"covers", P.covers.size()}, {"window_t", 8}};
}

void pattern_cxy(const Config& c, Report& r) {
  PrimeField f = c.field();
  PointedOracle o;
  auto cxy = parse_pointed(f, "(C, x*y)");
  std::mt19937_64 rng(c.seed);
  std::size_t killed = 0, alive = 0, wrong = 0;
  std::string first;
  for (const auto& id : catalog_ids(std::min(3u, r.k_max))) {
    auto m = make(f, id);
    for (int d = m->min_gen_degree(); d <= m->min_gen_degree() + 4; ++d) {
      std::size_t n = m->dim(d);
      if (!n) continue;
      for (int trial = 0; trial < 4; ++trial) {
        Vec v(n);
        for (auto& e : v) e = static_cast<Coeff>(rng() % c.p);
        if (is_zero_vec(v)) continue;
        auto p = make_pointed(m, m->from_coords(d, v));
        bool kx = m->is_zero(p.point.times(Monomial{1, 0}));
        if (o.leq(p, cxy) != kx && !wrong++) first = p.label;
        (kx ? killed : alive)++;
      }
    }
  }
  r.add("(C, x*y) freely realizes v*x = 0 on random points", wrong == 0 && killed > 5 && alive > 5,
        first.empty() ? std::to_string(killed) + " killed, " + std::to_string(alive) + " not" : first);

  auto P = pattern(parse_pointed(f, "(X_1, n)"), r.k_max, 8, o);
  auto lo = P.find("(N_1, n*y)"), up = P.find("(X_1, n)");
  if (!lo || !up) {
    r.add("window contains (N_1, n*y) and (X_1, n)", false);
    return;
  }
  r.add("[(N_1, n*y), (X_1, n)] has length 2", interval_inner_count(P, *lo, *up) == std::optional<std::size_t>(1));
  auto b = parse_pointed(f, "(B, x*y)");
  auto dm = down_set(P, o, psum(b, parse_pointed(f, "(N_1, n*y)")));
  std::vector<char> dlo(P.nodes.size()), dup(P.nodes.size());
  for (std::size_t j = 0; j < P.nodes.size(); ++j) {
    dlo[j] = P.leq[j][*lo];
    dup[j] = P.leq[j][*up];
  }
  r.add("(B, x*y) + (N_1, n*y) lies strictly inside the interval",
        subset(dlo, dm) && subset(dm, dup) && count(dlo) < count(dm) && count(dm) < count(dup));
  auto db = down_set(P, o, b);
  std::vector<char> prev = dup;
  for (unsigned k = 1; k + 1 <= r.k_max; ++k) {
    std::string name = "(B, x*y) + (X_" + std::to_string(k + 1) + ", n*y^" + std::to_string(k) + ")";
    auto chain = psum(b, parse_pointed(f, "(X_" + std::to_string(k + 1) + ", n*y^" + std::to_string(k) + ")"));
    auto d = down_set(P, o, chain);
    r.add(name + " strictly descends above (B, x*y)",
          subset(d, prev) && count(d) < count(prev) && subset(db, d) && count(db) < count(d) &&
              o.leq(chain, parse_pointed(f, "(X_1, n)")));
    prev = d;
  }
}

// ------------------------------------------------------------ cb-analysis

void collapse(const Config& c, Report& r) {
  PrimeField f = c.field();
  PointedOracle o;
  auto params = CollapseParams::from_kmax(std::max(2u, r.k_max));
  auto s1 = collapse_study(parse_pointed(f, "(S, x^2)"), params, o);
  auto m1 = match_chain(s1, parse_chain("1 + w*"), {{"0", 0}, {"(S, x^2)", 1}}, o);
  r.add("[0, x^2 | v] collapses to a prefix of 1 + w*", m1.ok(), m1.failures.empty() ? "" : m1.failures.front());
  r.add("[0, x^2 | v] does not match 1 + Z + w*", !match_chain(s1, parse_chain("1 + Z + w*"), {}, o).groups_match);
  auto s2 = collapse_study(parse_pointed(f, "(C, x*y)"), params, o);
  auto m2 = match_chain(s2, parse_chain("1 + Z + w*"),
                        {{"0", 0}, {"(B, x*y)", 1}, {"(X_1, n)", 1}, {"(C, x*y)", 2}}, o);
  r.add("[0, vx = 0] collapses to 1 + Z + w*", m2.ok(), m2.failures.empty() ? "" : m2.failures.front());
  r.add("[0, vx = 0] does not match 1 + w*", !match_chain(s2, parse_chain("1 + w*"), {}, o).groups_match);
  auto d2 = chain_derivative(parse_chain("1 + Z + w*"));
  r.add("second derivative of [0, vx = 0] is Fin(3)", d2 == ChainSpec::fin(3) && s2.groups == 3,
        d2.to_string() + ", window groups " + std::to_string(s2.groups));
  unsigned total = mdim(parse_chain("1 + w*")) + mdim(parse_chain("1 + Z + w*"));
  r.add("total m-dimension is 2", total == 2, std::to_string(total));
  r.data = {{"k_core", params.k_core}, {"t_core", params.t_core}, {"k_measure", params.k_measure},
            {"t_measure", params.t_measure}};
}

void cb_ranks(const Config& c, Report& r) {
  PrimeField f = c.field();
  PointedOracle o;
  auto tab = cb_table(f, std::max(2u, r.k_max), std::max(8, 2 * static_cast<int>(r.k_max) + 4), o);
  for (const auto& e : tab.entries)
    r.add(to_string(e.point) + " at level " + std::to_string(e.level) + " via " + e.pair.to_string(), e.ok(), e.note);
  auto level = [&](const char* p) {
    auto* e = tab.find(p);
    return e ? static_cast<int>(e->level) : -1;
  };
  for (const char* p : {"C", "D", "R~", "N~"}) r.add(std::string(p) + " has rank 1", level(p) == 1);
  for (const char* p : {"Q_R", "G_y", "G_x"}) r.add(std::string(p) + " has rank 2", level(p) == 2);
  for (const auto& id : catalog_ids(tab.k_max)) {
    if (id == FamilyId{Family::C} || id == FamilyId{Family::D}) continue;
    r.add(to_string(id) + " has rank 0", level(to_string(id).c_str()) == 0);
  }
  for (const char* p : {"N~", "R~"}) {
    auto* e = tab.find(p);
    r.add(std::string(p) + " is neg-isolated", e && e->neg_isolation == std::optional<bool>(true));
  }
  r.add("(vx=0 / v=0) is closed exactly on A and G_x", tab.closed_for_vx == std::vector<std::string>{"A", "G_x"});
  r.data = to_json(tab);
}

// ------------------------------------------------------------ limits, quilt, radical

void infinite_ar(const Config& c, Report& r) {
  PrimeField f = c.field();
  for (unsigned K = 1; K <= r.k_max; ++K)
    for (auto which : {InfiniteAR::CokernelD, InfiniteAR::CokernelC}) {
      auto x = infinite_ar_check(f, which, K, c.t);
      std::string at = x.id + " at stage " + std::to_string(K);
      r.add(at + ": u f = 0 (" + x.left_term + " - " + x.right_term + ")",
            x.composite_zero && x.left_term == "x*y" && x.right_term == "x*y");
      r.add(at + ": exact", x.exactness.ok(), x.exactness.failures.empty() ? "" : x.exactness.failures.front());
      r.add(at + ": cokernel " + std::string(which == InfiniteAR::CokernelD ? "D" : "C"), x.cokernel_iso);
    }
  for (unsigned K = 1; K <= r.k_max; ++K)
    for (const auto& [name, ok] : corollary_maps_check(f, K)) r.add(name + " at stage " + std::to_string(K), ok);
}

void quilt_radical(const Config& c, Report& r) {
  PrimeField f = c.field();
  ModulePtr S = make(f, {Family::S});
  auto x = Morphism::parse(S, S, {"x"});
  for (unsigned K = 1; K <= r.k_max; ++K) {
    auto sq = verify_squares(f, K, c.t);
    r.add("squares commute at stage " + std::to_string(K), sq.ok(), sq.details.empty() ? "" : sq.details.front());
  }
  std::string first;
  for (unsigned K = 1; K <= r.k_max; ++K) {
    auto rev = revolution(f, K);
    if (K == 1) first = rev.image_of_one;
    r.add("revolution(" + std::to_string(K) + ")(1) = x", rev.map.equals(x), rev.image_of_one);
    r.add("revolution(" + std::to_string(K) + ") = revolution(1)", rev.image_of_one == first);
  }
  const unsigned kr = std::min(3u, r.k_max);
  RadicalEngine eng(f, kr, 6);
  bool in_all = true;
  for (unsigned n = 1; n <= c.n_max; ++n) in_all = in_all && eng.contains(eng.power(n), x);
  r.add("x in rad^n(S, S) for n <= " + std::to_string(c.n_max), in_all);
  bool powers = true;
  for (unsigned k = 0; k <= 5; ++k) powers = powers && !S->is_zero(S->parse("x^" + std::to_string(k + 1)));
  r.add("x^(k+1) != 0 for k <= 5", powers);
  auto depth = image_depth(eng, c.n_max, 4);
  std::string g;
  for (int v : depth.g) g += (g.empty() ? "" : ",") + std::to_string(v);
  r.add("image depth g is non-decreasing", depth.g_monotone, g);
  r.add("image depth g grows over the tested range", depth.g_grows, g);
  for (const auto& id : catalog_ids(r.k_max)) {
    auto dv = divisibility_vanishing_check(f, id, c.t);
    r.add("x-divisible part of " + to_string(id) + " vanishes", dv.ok());
  }
  r.data = {{"radical_k_max", kr}, {"radical_depth", 6}, {"g", depth.g}, {"h", depth.h}};
}

void fitting(const Config& c, Report& r) {
  PrimeField f = c.field();
  std::vector<std::pair<std::string, ModulePtr>> mods;
  for (const auto& id : catalog_ids(r.k_max)) mods.push_back({to_string(id), make(f, id)});
  for (const char* p : {"N~", "R~"}) {
    auto st = limit_stage(f, parse_point(p), r.k_max + 1);
    mods.push_back({std::string(p) + " stage " + std::to_string(r.k_max + 1), st.module});
  }
  for (const auto& [name, m] : mods) {
    auto v = is_indecomposable(m, 6, 20, c.seed);
    r.add(name + ": no idempotent in " + std::to_string(v.trials) + " trials", !v.decomposed && v.trials >= 20);
  }
  auto m1 = make(f, {Family::M, 1});
  auto v = is_indecomposable(direct_sum({m1, m1}), 6, 20, c.seed);
  bool split = v.decomposed && v.idempotent.mul(f, v.idempotent) == v.idempotent && v.idempotent_rank > 0 &&
               v.idempotent_rank < v.quotient_dim;
  r.add("M_1 + M_1 is decomposed", split, v.summary);
}

}  // namespace

const std::vector<CheckSpec>& acceptance_checks() {
  static const std::vector<CheckSpec> checks = {
      {"ring-identities", "ring identities in S and its localization", "ring-core", 0, ring_identities},
      {"socle-models", "socle dimensions of S/(x+y)S and S'/(x+y)S'", "ring-core", 0, socle_dims},
      {"catalog-integrity", "catalog relations, socles, x-annihilation, realizations", "module-catalog", 6,
       catalog_integrity},
      {"edges-corays", "irreducible edges, ideal inclusions, coray limits", "ar-quiver", 4, edges_and_corays},
      {"ar-sequences", "AR sequences: exactness, almost split, S not an end", "ar-quiver", 5, ar_sequences},
      {"duality", "duality table", "hom-engine", 4, duality_table},
      {"pattern-x2", "pattern of (S, x^2), distributivity, trivial sums", "pp-lattice", 4, pattern_x2},
      {"pattern-vx", "pattern of (C, x*y), length two interval, descending chain", "pp-lattice", 4, pattern_cxy},
      {"collapse", "collapse of the two intervals, derivatives, m-dimension", "cb-analysis", 4, collapse},
      {"cb-table", "Cantor-Bendixson ranks and minimal pairs", "cb-analysis", 4, cb_ranks},
      {"infinite-ar", "limit AR sequences at finite stages", "ar-quiver", 5, infinite_ar},
      {"quilt-radical", "squares, revolution, radical powers, divisibility", "quilt-radical", 4, quilt_radical},
      {"indecomposability", "randomized Fitting evidence", "hom-engine", 5, fitting},
  };
  return checks;
}

Report run_check(const CheckSpec& spec, const Config& cfg) {
  Report r;
  r.check = spec.id;
  r.title = spec.title;
  r.anchor = spec.anchor;
  r.depth = cfg.t;
  r.k_max = std::min(spec.k_cap, cfg.k_max);
  try {
    spec.run(cfg, r);
  } catch (const std::exception& e) {
    r.add("check raised", false, e.what());
  }
  r.finish();
  return r;
}

std::vector<Report> run_checks(const Config& cfg, const std::vector<std::string>& ids, unsigned jobs) {
  std::vector<const CheckSpec*> todo;
  for (const auto& s : acceptance_checks())
    if (ids.empty() || std::find(ids.begin(), ids.end(), s.id) != ids.end()) todo.push_back(&s);
  for (const auto& id : ids)
    if (std::none_of(todo.begin(), todo.end(), [&](const CheckSpec* s) { return s->id == id; }))
      throw AlgebraError("unknown check " + id);
  std::vector<Report> out(todo.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) out[i] = run_check(*todo[i], cfg);
    return out;
  }
  std::size_t next = 0;
  while (next < todo.size()) {
    std::vector<std::pair<std::size_t, std::future<Report>>> batch;
    for (; next < todo.size() && batch.size() < jobs; ++next)
      batch.emplace_back(next, std::async(std::launch::async, run_check, std::cref(*todo[next]), std::cref(cfg)));
    for (auto& [i, fut] : batch) out[i] = fut.get();
  }
  return out;
}

}  // namespace dinf
