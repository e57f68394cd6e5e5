#include "dinf/radical.hpp"

#include <algorithm>

#include "dinf/quilt.hpp"

namespace dinf {

namespace {

const Mat& cached_matrix(MatCache& c, const Morphism& g, int d, int e) {
  auto key = std::make_tuple(static_cast<const void*>(&g), d, e);
  auto it = c.find(key);
  if (it == c.end()) it = c.emplace(key, g.matrix(d, e)).first;
  return it->second;
}

/// Trace of the action on the generators (constant coefficients).
Coeff top_trace(const Morphism& m) {
  const auto& src = *m.source();
  const PrimeField& f = src.field();
  Coeff tr = 0;
  for (unsigned g = 0; g < src.num_gens(); ++g) {
    int d = src.gen_degree(g);
    auto nodes = src.nodes(d);
    Vec c = src.coords(m.images()[g], d);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].gen == g && nodes[i].mono == Monomial{}) tr = f.add(tr, c[i]);
  }
  return tr;
}

}  // namespace

RadicalEngine::RadicalEngine(PrimeField f, unsigned k_max, int t, FamilyId from, FamilyId to)
    : f_(f), k_max_(k_max), t_(t), ids_(catalog_ids(k_max)) {
  for (const auto& id : ids_) mods_.push_back(make(f, id));
  const std::size_t n = mods_.size();
  lo_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lo_[i][j] = hom_min_degree(*mods_[i], *mods_[j]);
  const std::size_t a = index(from), b = index(to);
  auto pre = [&](std::size_t i) { return i == a ? std::min(0, lo_[a][i]) : lo_[a][i]; };
  auto post = [&](std::size_t j) { return j == b ? std::min(0, lo_[j][b]) : lo_[j][b]; };
  need_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) need_[i][j] = lo_[a][b] + t - pre(i) - post(j);

  rad1_ = empty_table();
  rad1_maps_.assign(n, std::vector<std::map<int, std::vector<Morphism>>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int e = lo_[i][j]; e <= need_[i][j]; ++e) {
        auto basis = hom_degree(mods_[i], mods_[j], e);
        if (i == j && e == 0) {
          // End is local: the radical is the kernel of the trace on the top
          Mat tr(1, basis.size());
          for (std::size_t q = 0; q < basis.size(); ++q) tr.at(0, q) = top_trace(basis[q]);
          std::vector<Morphism> rad;
          for (const auto& v : kernel(f_, tr)) {
            Morphism m = Morphism::zero(mods_[i], mods_[j]);
            for (std::size_t q = 0; q < basis.size(); ++q)
              if (v[q]) m = m + basis[q].scaled(v[q]);
            rad.push_back(std::move(m));
          }
          basis = std::move(rad);
        }
        for (auto& m : basis) {
          add(rad1_, i, j, e, vectorize(m, e));
          rad1_maps_[i][j][e].push_back(std::move(m));
        }
      }
  powers_.push_back(rad1_);
}

std::size_t RadicalEngine::index(FamilyId id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  throw AlgebraError(to_string(id) + " is not in the catalog window");
}

HomTable RadicalEngine::empty_table() const {
  return HomTable(mods_.size(), std::vector<std::map<int, HomBlock>>(mods_.size()));
}

void RadicalEngine::add(HomTable& t, std::size_t i, std::size_t j, int e, Vec v) const {
  auto it = t[i][j].find(e);
  if (it == t[i][j].end()) it = t[i][j].emplace(e, HomBlock{{}, Subspace(v.size())}).first;
  if (it->second.span.add(f_, v)) it->second.basis.push_back(std::move(v));
}

Vec RadicalEngine::vectorize(const Morphism& m, int e) const {
  Vec out;
  const auto& src = *m.source();
  for (unsigned g = 0; g < src.num_gens(); ++g) {
    Vec c = m.target()->coords(m.images()[g], src.gen_degree(g) + e);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Morphism RadicalEngine::morphism(std::size_t i, std::size_t j, int e, const Vec& v) const {
  const auto& src = *mods_[i];
  std::vector<Elem> images;
  std::size_t at = 0;
  for (unsigned g = 0; g < src.num_gens(); ++g) {
    int d = src.gen_degree(g) + e;
    std::size_t len = mods_[j]->dim(d);
    images.push_back(mods_[j]->from_coords(d, Vec(v.begin() + static_cast<std::ptrdiff_t>(at),
                                                  v.begin() + static_cast<std::ptrdiff_t>(at + len))));
    at += len;
  }
  return Morphism(mods_[i], mods_[j], std::move(images));
}

Vec RadicalEngine::compose_vec(std::size_t i, std::size_t k, int e1, const Vec& fv, const Morphism& g, int e2,
                               MatCache& cache) const {
  const auto& src = *mods_[i];
  Vec out;
  std::size_t at = 0;
  for (unsigned q = 0; q < src.num_gens(); ++q) {
    int d = src.gen_degree(q) + e1;
    std::size_t len = mods_[k]->dim(d);
    Vec slice(fv.begin() + static_cast<std::ptrdiff_t>(at), fv.begin() + static_cast<std::ptrdiff_t>(at + len));
    at += len;
    Vec img = len ? cached_matrix(cache, g, d, e2).apply(f_, slice) : Vec(g.target()->dim(d + e2), 0);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

const HomTable& RadicalEngine::power(unsigned n) {
  if (n == 0) throw AlgebraError("radical powers start at 1");
  while (powers_.size() < n) {
    const HomTable& prev = powers_.back();
    powers_.push_back(product_capped(prev, rad1_maps_, mats_, prev));
  }
  return powers_[n - 1];
}

HomTable RadicalEngine::product_capped(const HomTable& a, const MapTable& b, MatCache& cache, const HomTable& cap) {
  const std::size_t N = mods_.size();
  HomTable out = empty_table();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& [e, cblk] : cap[i][j]) {
        const std::size_t limit = cblk.basis.size();
        std::size_t have = 0;
        for (std::size_t k = 0; k < N && have < limit; ++k)
          for (const auto& [e1, blk] : a[i][k]) {
            auto it = b[k][j].find(e - e1);
            if (it == b[k][j].end()) continue;
            for (const auto& fv : blk.basis) {
              for (const auto& g : it->second) {
                Vec v = compose_vec(i, k, e1, fv, g, e - e1, cache);
                if (is_zero_vec(v)) continue;
                add(out, i, j, e, std::move(v));
                have = out[i][j][e].basis.size();
                if (have == limit) break;
              }
              if (have == limit) break;
            }
            if (have == limit) break;
          }
      }
  return out;
}

HomTable RadicalEngine::product(const HomTable& a, const HomTable& b, const HomTable& cap) {
  const std::size_t N = mods_.size();
  MapTable bm(N, std::vector<std::map<int, std::vector<Morphism>>>(N));
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& [e, blk] : b[k][j])
        for (const auto& v : blk.basis) bm[k][j][e].push_back(morphism(k, j, e, v));
  MatCache local;
  return product_capped(a, bm, local, cap);
}

std::vector<HomTable> RadicalEngine::powers_of(const HomTable& factor, unsigned J) {
  std::vector<HomTable> out;
  if (J == 0) return out;
  out.push_back(factor);
  for (unsigned j = 2; j <= J; ++j) out.push_back(product(out.back(), factor, out.back()));
  return out;
}

bool RadicalEngine::contains(const HomTable& t, const Morphism& m) const {
  auto e = m.degree();
  if (!e) return m.is_zero();
  std::size_t i = index(parse_family_id(m.source()->name())), j = index(parse_family_id(m.target()->name()));
  auto it = t[i][j].find(*e);
  Vec v = vectorize(m, *e);
  if (is_zero_vec(v)) return true;
  return it != t[i][j].end() && it->second.span.contains(f_, v);
}

// ------------------------------------------------------------ windows

std::size_t RadicalWindow::total(unsigned n) const {
  std::size_t s = 0;
  for (auto d : dims.at(n - 1)) s += d;
  return s;
}

RadicalWindow rad_power(PrimeField f, FamilyId m, FamilyId n, unsigned n_max, unsigned k_max, int t) {
  if (n_max == 0) throw AlgebraError("n_max must be positive");
  RadicalEngine eng(f, k_max, t, m, n);
  std::size_t a = eng.index(m), b = eng.index(n);
  RadicalWindow w;
  w.source = to_string(m);
  w.target = to_string(n);
  w.n_max = n_max;
  w.k_max = k_max;
  w.t = t;
  w.lowest = eng.lowest(a, b);
  std::vector<std::map<int, Subspace>> spans;
  for (unsigned p = 1; p <= n_max; ++p) {
    const auto& tab = eng.power(p);
    std::vector<std::size_t> row;
    std::map<int, Subspace> sp;
    for (int e = w.lowest; e <= w.lowest + t; ++e) {
      auto it = tab[a][b].find(e);
      row.push_back(it == tab[a][b].end() ? 0 : it->second.basis.size());
      if (it != tab[a][b].end()) sp.emplace(e, it->second.span);
    }
    w.dims.push_back(row);
    spans.push_back(std::move(sp));
  }
  w.descending = true;
  for (unsigned p = 1; p < n_max; ++p) {
    for (const auto& [e, s] : spans[p]) {
      auto it = spans[p - 1].find(e);
      if (it == spans[p - 1].end() || !it->second.contains(f, s)) w.descending = false;
    }
    if (w.total(p + 1) < w.total(p)) w.strict_steps.push_back(p);
  }
  const auto& top = eng.power(n_max)[a][b];
  for (int e = w.lowest; e <= w.lowest + t; ++e) {
    std::vector<std::string> gens;
    if (auto it = top.find(e); it != top.end())
      for (const auto& v : it->second.basis) {
        Morphism mm = eng.morphism(a, b, e, v);
        std::string s;
        for (std::size_t g = 0; g < mm.images().size(); ++g)
          s += (g ? ", " : "") + mm.target()->to_string(mm.images()[g]);
        gens.push_back(s);
      }
    w.generators.push_back(gens);
  }
  return w;
}

nlohmann::json to_json(const RadicalWindow& w) {
  nlohmann::json dims = nlohmann::json::array();
  for (std::size_t p = 0; p < w.dims.size(); ++p) dims.push_back({{"n", p + 1}, {"dims", w.dims[p]}});
  return {{"source", w.source},     {"target", w.target},        {"n_max", w.n_max},
          {"k_max", w.k_max},       {"depth", w.t},              {"lowest_degree", w.lowest},
          {"powers", dims},         {"descending", w.descending}, {"strict_steps", w.strict_steps},
          {"generators", w.generators}};
}

ImageDepth image_depth(RadicalEngine& eng, unsigned n_max, unsigned J) {
  ImageDepth r;
  r.n_max = n_max;
  r.k_max = eng.k_max();
  r.t = eng.depth();
  std::size_t s = eng.index({Family::S});
  ModulePtr S = eng.modules()[s];
  auto prods = eng.powers_of(eng.power(n_max), J);
  for (const auto& P : prods) {
    int g = r.t + 1, h = r.t + 1;
    for (int e = 0; e <= r.t; ++e) {
      auto it = P[s][s].find(e);
      if (it == P[s][s].end()) continue;
      auto nodes = S->nodes(e);
      for (const auto& v : it->second.basis)
        for (std::size_t q = 0; q < nodes.size(); ++q) {
          if (!v[q]) continue;
          const Monomial& mo = nodes[q].mono;
          if (mo.b == 0) g = std::min(g, static_cast<int>(mo.a));
          else h = std::min(h, static_cast<int>(mo.b));
        }
    }
    r.g.push_back(g);
    r.h.push_back(h);
  }
  r.g_monotone = std::is_sorted(r.g.begin(), r.g.end());
  r.h_monotone = std::is_sorted(r.h.begin(), r.h.end());
  r.g_grows = !r.g.empty() && r.g.back() > r.g.front();
  return r;
}

// ------------------------------------------------------------ divisibility

DivisibilityReport divisibility_vanishing_check(PrimeField f, FamilyId id, int t) {
  ModulePtr m = make(f, id);
  DivisibilityReport rep;
  rep.module = to_string(id);
  rep.t = t;
  const int lo = m->min_gen_degree();
  for (int J = 0; J <= t + 1; ++J) {
    std::vector<std::size_t> row;
    for (int d = lo; d <= lo + t; ++d) {
      int src = d - J;
      std::size_t r = 0;
      if (src >= lo && m->dim(src) > 0) r = rank(f, m->action(src, Monomial{static_cast<unsigned>(J), 0}));
      row.push_back(r);
    }
    rep.dims.push_back(row);
  }
  rep.shrinking = true;
  for (std::size_t J = 1; J < rep.dims.size(); ++J)
    for (std::size_t d = 0; d < rep.dims[J].size(); ++d)
      if (rep.dims[J][d] > rep.dims[J - 1][d]) rep.shrinking = false;
  rep.vanishes = std::all_of(rep.dims.back().begin(), rep.dims.back().end(), [](std::size_t v) { return v == 0; });
  return rep;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

Status NilIndexReport::status() const {
  if (lower_status == Status::Fail || upper_status == Status::Fail) return Status::Fail;
  if (lower_status == Status::Indeterminate || upper_status == Status::Indeterminate) return Status::Indeterminate;
  return Status::Pass;
}

NilIndexReport nil_index_report(PrimeField f, unsigned k_max, unsigned n_max, int t) {
  NilIndexReport r;
  r.k_max = k_max;
  r.n_max = n_max;
  r.t = t;
  r.note = "the transfinite statement is cited, not machine-proved: every fact here is checked in a finite window";
  if (n_max == 0 || t < 1 || k_max == 0) {
    r.lower_verdict = r.upper_verdict = "empty window";
    return r;
  }
  ModulePtr S = make(f, {Family::S});
  RadicalEngine eng(f, k_max, t);
  auto x = Morphism::parse(S, S, {"x"});
  bool all = true;
  for (unsigned n = 1; n <= n_max; ++n) all = all && eng.contains(eng.power(n), x);
  r.lower.push_back({"x in rad^n(S, S) for n <= " + std::to_string(n_max), all});
  bool powers = true;
  for (unsigned k = 0; k <= 5; ++k) powers = powers && !S->is_zero(S->parse("x^" + std::to_string(k + 1)));
  r.lower.push_back({"x^(k+1) != 0 in S for k <= 5", powers});
  bool rev = true;
  for (unsigned K = 1; K <= k_max; ++K) {
    auto loop = revolution(f, K);
    rev = rev && loop.map.equals(x);
  }
  r.lower.push_back({"revolution(K) = x for K <= " + std::to_string(k_max), rev});

  bool div = true;
  for (const auto& id : catalog_ids(k_max)) div = div && divisibility_vanishing_check(f, id, t).ok();
  r.upper.push_back({"x-divisible part vanishes in every catalog module", div});
  auto depth = image_depth(eng, n_max, 3);
  r.upper.push_back({"image depth of Omega^j grows with j", depth.g_monotone && depth.g_grows});

  auto verdict = [](const std::vector<std::pair<std::string, bool>>& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& p) { return p.second; }) ? Status::Pass : Status::Fail;
  };
  r.lower_status = verdict(r.lower);
  r.upper_status = verdict(r.upper);
  r.lower_verdict = r.lower_status == Status::Pass ? "consistent with nil(rad) >= w*2" : "lower bound evidence fails";
  r.upper_verdict = r.upper_status == Status::Pass ? "consistent with rad^(w*2) = 0" : "upper bound evidence fails";
  return r;
}

nlohmann::json to_json(const NilIndexReport& r) {
  auto facts = [](const std::vector<std::pair<std::string, bool>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, ok] : v) a.push_back({{"fact", k}, {"holds", ok}});
    return a;
  };
  return {{"k_max", r.k_max},
          {"n_max", r.n_max},
          {"depth", r.t},
          {"lower", facts(r.lower)},
          {"upper", facts(r.upper)},
          {"lower_verdict", r.lower_verdict},
          {"upper_verdict", r.upper_verdict},
          {"status", to_string(r.status())},
          {"note", r.note}};
}

}  // namespace dinf
