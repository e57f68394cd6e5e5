#include "dinf/cb.hpp"

#include "dinf/ar.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace dinf {

// ------------------------------------------------------------ chain calculus

ChainSpec ChainSpec::fin(unsigned n) { return ChainSpec{{ChainBlock{BlockKind::Fin, n}}}.normalized(); }

ChainSpec ChainSpec::normalized() const {
  ChainSpec out;
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::Fin && b.n == 0) continue;
    if (b.kind == BlockKind::Fin && !out.blocks.empty() && out.blocks.back().kind == BlockKind::Fin)
      out.blocks.back().n += b.n;
    else
      out.blocks.push_back(b.kind == BlockKind::Fin ? b : ChainBlock{b.kind, 0});
  }
  return out;
}

bool ChainSpec::is_point() const {
  auto n = normalized();
  return n.blocks.size() == 1 && n.blocks[0].kind == BlockKind::Fin && n.blocks[0].n == 1;
}

bool ChainSpec::is_finite() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const ChainBlock& b) { return b.kind == BlockKind::Fin; });
}

std::string ChainSpec::to_string() const {
  auto n = normalized();
  if (n.blocks.empty()) return "0";
  std::string out;
  for (const auto& b : n.blocks) {
    if (!out.empty()) out += " + ";
    switch (b.kind) {
      case BlockKind::Fin: out += std::to_string(b.n); break;
      case BlockKind::Omega: out += "w"; break;
      case BlockKind::OmegaStar: out += "w*"; break;
      case BlockKind::Z: out += "Z"; break;
    }
  }
  return out;
}

ChainSpec parse_chain(const std::string& text) {
  ChainSpec c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    tok = std::regex_replace(tok, std::regex("^\\s+|\\s+$"), "");
    if (tok == "w" || tok == "omega" || tok == "ω")
      c.blocks.push_back({BlockKind::Omega, 0});
    else if (tok == "w*" || tok == "omega*" || tok == "ω*")
      c.blocks.push_back({BlockKind::OmegaStar, 0});
    else if (tok == "Z" || tok == "ℤ")
      c.blocks.push_back({BlockKind::Z, 0});
    else if (std::regex_match(tok, std::regex("[0-9]+")))
      c.blocks.push_back({BlockKind::Fin, static_cast<unsigned>(std::stoul(tok))});
    else
      throw AlgebraError("cannot parse chain block '" + tok + "'");
  }
  c = c.normalized();
  if (c.blocks.empty()) throw AlgebraError("empty chain");
  return c;
}

nlohmann::json to_json(const ChainSpec& c) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : c.normalized().blocks) {
    switch (b.kind) {
      case BlockKind::Fin: blocks.push_back({{"fin", b.n}}); break;
      case BlockKind::Omega: blocks.push_back({{"omega", true}}); break;
      case BlockKind::OmegaStar: blocks.push_back({{"omegaStar", true}}); break;
      case BlockKind::Z: blocks.push_back({{"z", true}}); break;
    }
  }
  return {{"blocks", blocks}};
}

ChainSpec chain_from_json(const nlohmann::json& j) {
  ChainSpec c;
  for (const auto& b : j.at("blocks")) {
    if (b.contains("fin"))
      c.blocks.push_back({BlockKind::Fin, b["fin"].get<unsigned>()});
    else if (b.contains("omega"))
      c.blocks.push_back({BlockKind::Omega, 0});
    else if (b.contains("omegaStar"))
      c.blocks.push_back({BlockKind::OmegaStar, 0});
    else if (b.contains("z"))
      c.blocks.push_back({BlockKind::Z, 0});
    else
      throw AlgebraError("unknown chain block " + b.dump());
  }
  return c.normalized();
}

std::vector<std::size_t> derivative_blocks(const ChainSpec& c) {
  auto n = c.normalized();
  std::vector<std::size_t> out;
  std::size_t group = 0;
  for (std::size_t i = 0; i < n.blocks.size(); ++i) {
    if (i > 0 && !(n.blocks[i - 1].has_max() && n.blocks[i].has_min())) ++group;
    out.push_back(group);
  }
  return out;
}

ChainSpec chain_derivative(const ChainSpec& c) {
  auto g = derivative_blocks(c);
  return ChainSpec::fin(g.empty() ? 0 : static_cast<unsigned>(g.back() + 1));
}

unsigned mdim(const ChainSpec& c) {
  ChainSpec cur = c.normalized();
  for (unsigned n = 0;; ++n) {
    cur = chain_derivative(cur);
    if (cur.is_point() || cur.blocks.empty()) return n;
  }
}

// ------------------------------------------------------------ window collapse

namespace {

using Bits = std::vector<std::uint64_t>;

Bits down_bits(const PatternPoset& p, std::size_t i) {
  Bits b((p.nodes.size() + 63) / 64, 0);
  for (std::size_t j = 0; j < p.nodes.size(); ++j)
    if (p.leq[j][i]) b[j / 64] |= std::uint64_t{1} << (j % 64);
  return b;
}

std::size_t xor_count(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] ^ b[i]);
  return c;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<std::size_t> match_node(const PatternPoset& w, std::size_t i, const PatternPoset& next,
                                      PointedOracle& oracle) {
  if (i == w.bottom) return next.bottom;
  if (auto j = next.find(w.nodes[i].pm.label); j && oracle.equivalent(next.nodes[*j].pm, w.nodes[i].pm)) return j;
  for (std::size_t j = 0; j < next.nodes.size(); ++j)
    if (j != next.bottom && oracle.equivalent(next.nodes[j].pm, w.nodes[i].pm)) return j;
  return std::nullopt;
}

std::optional<std::size_t> CollapseResult::class_of_label(const std::string& label) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& name : classes[c].labels)
      if (name == label) return c;
  return std::nullopt;
}

CollapseResult window_collapse(const PatternPoset& w, const PatternPoset& next, const PatternPoset& next2,
                               PointedOracle& oracle) {
  CollapseResult r;
  r.seed = w.seed.label;
  r.k_max = w.k_max;
  r.t = w.t;
  const std::size_t n = w.nodes.size();
  r.node_image.resize(n);
  std::vector<Bits> dw(n), dn(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = match_node(w, i, next, oracle);
    auto j2 = match_node(w, i, next2, oracle);
    if (!j || !j2) throw AlgebraError("node " + w.nodes[i].pm.label + " missing from a larger window");
    r.node_image[i] = *j;
    dw[i] = down_bits(next, *j);
    dn[i] = down_bits(next2, *j2);
  }
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (xor_count(dw[i], dw[j]) == xor_count(dn[i], dn[j])) uf.unite(i, j);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> cls;
  for (auto& [root, members] : groups) cls.push_back(std::move(members));
  const std::size_t m = cls.size();
  // [a] <= [b] when D(a) minus D(b) is stably finite
  auto diff_count = [](const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & ~b[i]);
    return c;
  };
  std::vector<std::vector<char>> le(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t i = cls[a].front(), j = cls[b].front();
      le[a][b] = diff_count(dw[i], dw[j]) == diff_count(dn[i], dn[j]);
    }
  r.chain = true;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      if (le[a][b] == le[b][a]) {
        r.chain = false;
        if (r.failures.size() < 20)
          r.failures.push_back(w.nodes[cls[a][0]].pm.label + (le[a][b] ? " ~ " : " || ") +
                               w.nodes[cls[b][0]].pm.label);
      }
    }
  std::vector<std::size_t> below(m, 0), order(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && le[b][a]) ++below[a];
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  r.class_of.assign(n, 0);
  for (std::size_t pos = 0; pos < m; ++pos) {
    CollapseClass c;
    c.members = cls[order[pos]];
    for (std::size_t i : c.members) {
      r.class_of[i] = pos;
      c.labels.push_back(w.nodes[i].pm.label);
    }
    r.classes.push_back(std::move(c));
  }
  return r;
}

// ------------------------------------------------------------ collapse study

CollapseParams CollapseParams::from_kmax(unsigned k_max) {
  CollapseParams p;
  p.k_core = std::max(1u, (k_max > 2 ? k_max - 2 : 0) / 2);
  p.t_core = static_cast<int>(p.k_core) + 1;
  p.k_measure = std::max(k_max + 2, 2 * p.k_core + 4);
  p.t_measure = 2 * static_cast<int>(p.k_measure) - 2;
  return p;
}

std::optional<std::size_t> CollapseStudy::class_of(const PointedModule& phi, PointedOracle& oracle) const {
  const PatternPoset& w = windows.at(0);
  if (phi.is_bottom()) return small.class_of[w.bottom];
  if (auto j = w.find(phi.label); j && oracle.equivalent(w.nodes[*j].pm, phi)) return small.class_of[*j];
  for (std::size_t j = 0; j < w.nodes.size(); ++j)
    if (j != w.bottom && oracle.equivalent(w.nodes[j].pm, phi)) return small.class_of[j];
  return std::nullopt;
}

CollapseStudy collapse_study(const PointedModule& seed, const CollapseParams& prm, PointedOracle& oracle) {
  CollapseStudy s;
  s.seed = seed.label;
  s.params = prm;
  s.windows.push_back(pattern(seed, prm.k_core, prm.t_core, oracle));
  s.windows.push_back(pattern(seed, prm.k_core + 1, prm.t_core + 1, oracle));
  s.windows.push_back(pattern(seed, prm.k_measure, prm.t_measure, oracle));
  s.windows.push_back(pattern(seed, prm.k_measure + 1, prm.t_measure + 2, oracle));
  const auto& W = s.windows;
  s.small = window_collapse(W[0], W[2], W[3], oracle);
  s.large = window_collapse(W[1], W[2], W[3], oracle);
  for (const auto& c : s.small.classes) {
    auto j = match_node(W[0], c.members.front(), W[1], oracle);
    if (!j) throw AlgebraError("core node " + c.label() + " missing from the larger core");
    s.class_image.push_back(s.large.class_of[*j]);
  }
  s.group_of.assign(s.small.classes.size(), 0);
  for (std::size_t c = 1; c < s.small.classes.size(); ++c) {
    bool same = s.large.between(s.class_image[c - 1], s.class_image[c]) == 0;
    s.group_of[c] = s.group_of[c - 1] + (same ? 0 : 1);
  }
  s.groups = s.small.classes.empty() ? 0 : s.group_of.back() + 1;
  return s;
}

ChainMatch match_chain(const CollapseStudy& s, const ChainSpec& symbolic, const std::vector<ChainAnchor>& anchors,
                       PointedOracle& oracle) {
  ChainMatch m;
  m.symbolic = symbolic.normalized();
  m.derivative = chain_derivative(m.symbolic);
  m.window_derivative = ChainSpec::fin(static_cast<unsigned>(s.groups));
  m.chain = s.small.chain && s.large.chain;
  for (const auto& f : s.small.failures) m.failures.push_back("small core: " + f);
  for (const auto& f : s.large.failures) m.failures.push_back("large core: " + f);
  auto lone_bottom = [](const CollapseResult& r) {
    return !r.classes.empty() && r.classes[0].members.size() == 1 && r.classes[0].labels[0] == "0";
  };
  m.bottom_alone = lone_bottom(s.small) && lone_bottom(s.large);
  m.grows = s.large.classes.size() > s.small.classes.size();
  m.groups_match = m.window_derivative == m.derivative;
  if (!m.groups_match)
    m.failures.push_back("window groups " + m.window_derivative.to_string() + " vs derivative " +
                         m.derivative.to_string());
  auto blocks = derivative_blocks(m.symbolic);
  m.anchors_ok = true;
  const PrimeField& f = s.windows.at(0).seed.module->field();
  for (const auto& a : anchors) {
    auto c = s.class_of(parse_pointed(f, a.formula), oracle);
    if (!c || a.block >= blocks.size() || s.group_of[*c] != blocks[a.block]) {
      m.anchors_ok = false;
      m.failures.push_back("anchor " + a.formula + " not in the point of block " + std::to_string(a.block));
    }
  }
  return m;
}

// ------------------------------------------------------------ points and cuts

std::string PointElement::to_string() const {
  std::string p = dinf::to_string(point);
  if (point.is_limit()) p += "@" + std::to_string(stage);
  return "(" + p + ", " + (element.empty() ? std::string("designated") : element) + ")";
}

namespace {

/// The element at its stage and at `extra` further stages along the ray.
std::vector<PointedModule> element_stages(PrimeField f, const PointElement& pe, unsigned extra) {
  std::vector<PointedModule> out;
  if (!pe.point.is_limit()) {
    out.push_back(make_pointed(make(f, *pe.point.id), pe.element));
    return out;
  }
  StageModel st = limit_stage(f, pe.point, pe.stage);
  ModulePtr cur = st.module;
  Elem e = pe.element.empty() ? st.designated : cur->parse(pe.element);
  out.push_back(make_pointed(cur, e));
  for (unsigned j = 1; j <= extra; ++j) {
    Morphism ray(cur, st.next, st.ray_images);
    e = ray.apply(e);
    cur = st.next;
    out.push_back(make_pointed(cur, e));
    st = limit_stage(f, pe.point, pe.stage + j);
  }
  return out;
}

bool satisfies(PointedOracle& oracle, const std::vector<PointedModule>& reps, const PointedModule& phi) {
  for (const auto& r : reps)
    if (oracle.leq(r, phi)) return true;
  return false;
}

std::vector<std::size_t> minimal_of(const PatternPoset& w, const std::vector<char>& in) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < in.size() && minimal; ++j)
      if (j != i && in[j] && w.less(j, i)) minimal = false;
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> maximal_of(const PatternPoset& w, const std::vector<char>& in) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i]) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < in.size() && maximal; ++j)
      if (j != i && in[j] && w.less(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<char> satisfied_nodes(PrimeField f, const PatternPoset& w, PointedOracle& oracle, const PointElement& pe,
                                  unsigned extra) {
  auto reps = element_stages(f, pe, extra);
  std::vector<char> out(w.nodes.size(), 0);
  for (std::size_t i = 0; i < w.nodes.size(); ++i) out[i] = satisfies(oracle, reps, w.nodes[i].pm);
  return out;
}

std::string to_string(CutKind k) {
  switch (k) {
    case CutKind::Principal: return "principal";
    case CutKind::Limit: return "limit";
    case CutKind::Critical: return "critical";
  }
  return "?";
}

std::vector<Cut> classify_cuts(PrimeField f, const PatternPoset& w, const PatternPoset& next, PointedOracle& oracle,
                               const std::vector<PointElement>& elements) {
  std::vector<Cut> cuts;
  const std::size_t n = w.nodes.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (v == w.bottom) continue;
    Cut c;
    c.source = w.seed.label;
    c.upper.assign(n, 0);
    std::vector<char> lower(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      c.upper[j] = w.leq[v][j];
      lower[j] = !c.upper[j];
    }
    c.kind = CutKind::Principal;
    c.generator = w.nodes[v].pm.label;
    c.realized_by = w.nodes[v].id ? to_string(*w.nodes[v].id) : "0";
    c.up_closed = c.meet_closed = true;
    c.cofilter = true;
    auto mx = maximal_of(w, lower);
    for (std::size_t a = 0; a < mx.size() && c.cofilter; ++a)
      for (std::size_t b = a + 1; b < mx.size() && c.cofilter; ++b)
        if (oracle.leq_sum(w.nodes[v].pm, {&w.nodes[mx[a]].pm, &w.nodes[mx[b]].pm})) c.cofilter = false;
    cuts.push_back(std::move(c));
  }
  for (const auto& pe : elements) {
    auto reps = element_stages(f, pe, 2);
    Cut c;
    c.source = w.seed.label;
    c.upper = satisfied_nodes(f, w, oracle, pe);
    c.realized_by = to_string(pe.point);
    c.up_closed = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (c.upper[i] && w.leq[i][j] && !c.upper[j]) c.up_closed = false;
    auto mins = minimal_of(w, c.upper);
    c.meet_closed = true;
    for (std::size_t a = 0; a < mins.size() && c.meet_closed; ++a)
      for (std::size_t b = a + 1; b < mins.size() && c.meet_closed; ++b)
        if (!satisfies(oracle, reps, pconj(w.nodes[mins[a]].pm, w.nodes[mins[b]].pm))) c.meet_closed = false;
    std::vector<char> lower(n, 0);
    for (std::size_t j = 0; j < n; ++j) lower[j] = !c.upper[j];
    auto mx = maximal_of(w, lower);
    c.cofilter = true;
    for (std::size_t a = 0; a < mx.size() && c.cofilter; ++a)
      for (std::size_t b = a + 1; b < mx.size() && c.cofilter; ++b)
        if (satisfies(oracle, reps, psum(w.nodes[mx[a]].pm, w.nodes[mx[b]].pm))) c.cofilter = false;

    bool all = true;
    for (std::size_t i = 0; i < n; ++i)
      if (i != w.bottom && !c.upper[i]) all = false;
    auto up_next = satisfied_nodes(f, next, oracle, pe);
    auto mins_next = minimal_of(next, up_next);
    if (all) {
      c.kind = CutKind::Critical;
      c.generator = "q";
    } else if (mins.size() == 1 && mins_next.size() == 1 &&
               oracle.equivalent(w.nodes[mins[0]].pm, next.nodes[mins_next[0]].pm)) {
      c.kind = CutKind::Principal;
      c.generator = w.nodes[mins[0]].pm.label;
    } else {
      c.kind = CutKind::Limit;
      c.generator = "ray of " + pe.to_string();
    }
    cuts.push_back(std::move(c));
  }
  return cuts;
}

std::vector<PointElement> default_cut_elements(unsigned k_max) {
  PointModel n{PointKind::Ntilde, std::nullopt}, gx{PointKind::Gx, std::nullopt};
  PointModel d{PointKind::Catalog, FamilyId{Family::D}};
  return {{d, "x^3", 0}, {n, "m*x^2", k_max + 2}, {n, "m*x^3", k_max + 2}, {n, "m*x^4", k_max + 2}, {gx, "", k_max + 2}};
}

// ------------------------------------------------------------ openness

Pair parse_pair(PrimeField f, const std::string& phi, const std::string& psi) {
  return {parse_pointed(f, phi), parse_pointed(f, psi)};
}

namespace {

/// {v : r v in target}, for r : F^n -> F^m.
Subspace pullback(const PrimeField& f, const Mat& r, const Subspace& target) {
  const std::size_t n = r.cols(), m = r.rows(), k = target.dim();
  Mat a(m, n + k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = r.at(i, j);
    for (std::size_t j = 0; j < k; ++j) a.at(i, n + j) = f.neg(target.basis()[j][i]);
  }
  Subspace out(n);
  for (const auto& v : kernel(f, a)) out.add(f, Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
  return out;
}

}  // namespace

OpenReport open_set_membership(PrimeField f, const Pair& pair, const PointModel& point, unsigned K, int t,
                               PointedOracle& oracle, unsigned depth) {
  OpenReport rep;
  if (!point.is_limit()) {
    ModulePtr m = make(f, *point.id);
    for (int d = m->min_gen_degree(); d <= m->min_gen_degree() + t; ++d) {
      const Subspace& phi = oracle.image(pair.phi, m, d);
      if (!oracle.image(pair.psi, m, d).contains(f, phi)) {
        rep.open = true;
        rep.witness_degree = d;
        return rep;
      }
    }
    return rep;
  }
  if (depth == 0) throw AlgebraError("depth must be positive");
  // stage modules and rays K -> K+1 -> ... -> K+depth
  std::vector<ModulePtr> mods;
  std::vector<Morphism> rays;
  StageModel st = limit_stage(f, point, K);
  mods.push_back(st.module);
  for (unsigned j = 0; j < depth; ++j) {
    rays.emplace_back(mods.back(), st.next, st.ray_images);
    mods.push_back(st.next);
    st = limit_stage(f, point, K + j + 1);
  }
  const int rd = limit_stage(f, point, K).ray_degree;
  ModulePtr m0 = mods[0];
  for (int d = m0->min_gen_degree(); d <= m0->min_gen_degree() + t; ++d) {
    const Subspace& phi = oracle.image(pair.phi, m0, d);
    if (phi.dim() == 0) continue;
    Mat r = Mat::identity(m0->dim(d));
    std::optional<Subspace> prev;
    Subspace last;
    for (unsigned j = 1; j <= depth; ++j) {
      int dj = d + static_cast<int>(j - 1) * rd;
      r = rays[j - 1].matrix(dj, rd).mul(f, r);
      Subspace pb = pullback(f, r, oracle.image(pair.psi, mods[j], dj + rd));
      if (j + 1 == depth) prev = pb;
      last = std::move(pb);
    }
    if (prev && !(prev->dim() == last.dim() && last.contains(f, *prev))) rep.stable = false;
    if (!last.contains(f, phi)) {
      rep.open = true;
      rep.witness_degree = d;
      return rep;
    }
  }
  return rep;
}

// ------------------------------------------------------------ CB table

const CBEntry* CBTable::find(const std::string& point) const {
  for (const auto& e : entries)
    if (to_string(e.point) == point) return &e;
  return nullptr;
}

bool CBTable::ok() const {
  for (const auto& e : entries)
    if (!e.ok()) return false;
  return first_match.ok() && second_match.ok() && closed_for_vx == std::vector<std::string>{"A", "G_x"};
}

namespace {

PointModel catalog_point(FamilyId id) { return {PointKind::Catalog, id}; }
PointModel limit_point(PointKind k) { return {k, std::nullopt}; }

unsigned point_rank(const PointModel& p) {
  switch (p.kind) {
    case PointKind::Catalog:
      return (p.id->family == Family::C || p.id->family == Family::D) ? 1 : 0;
    case PointKind::Ntilde:
    case PointKind::Rtilde: return 1;
    default: return 2;
  }
}

struct Level {
  bool simple = false;
  bool not_lower = false;
};

Level level_check(const CollapseStudy& s, const Pair& pr, unsigned level, PointedOracle& oracle, std::string& note) {
  Level l;
  auto cp = s.class_of(pr.phi, oracle), cs = s.class_of(pr.psi, oracle);
  if (!cp || !cs) {
    note += "pair outside the window of " + s.seed + "; ";
    return l;
  }
  bool adjacent_small = *cp == *cs + 1;
  bool adjacent_large = s.class_image[*cp] == s.class_image[*cs] + 1;
  if (level == 1) {
    l.simple = adjacent_small && adjacent_large;
    l.not_lower = *cp != *cs;
  } else {
    l.simple = s.group_of[*cp] == s.group_of[*cs] + 1;
    l.not_lower = *cp > *cs && !adjacent_large;
  }
  return l;
}

}  // namespace

// every candidate lies below phi
bool simple_at_zero(const Pair& pr, unsigned k_max, int t, PointedOracle& oracle) {
  if (!oracle.leq(pr.psi, pr.phi) || oracle.leq(pr.phi, pr.psi)) return false;
  for (const auto& [id, c] : pattern_candidates(pr.phi, k_max, t, oracle))
    if (!oracle.leq(c, pr.psi) && !oracle.leq(pr.phi, c)) return false;
  return true;
}

bool neg_isolation_check(PrimeField f, const PatternPoset& w, PointedOracle& oracle, const PointElement& pe,
                         const PointedModule& largest) {
  auto reps = element_stages(f, pe, 2);
  if (satisfies(oracle, reps, largest)) return false;
  auto up = satisfied_nodes(f, w, oracle, pe);
  for (std::size_t i = 0; i < w.nodes.size(); ++i)
    if (!up[i] && !oracle.leq(w.nodes[i].pm, largest)) return false;
  return true;
}

CBTable cb_table(PrimeField f, unsigned k_max, int t, PointedOracle& oracle) {
  CBTable tab;
  tab.k_max = k_max;
  tab.t = t;
  auto prm = CollapseParams::from_kmax(k_max);
  tab.first = collapse_study(parse_pointed(f, "(S, x^2)"), prm, oracle);
  tab.second = collapse_study(parse_pointed(f, "(C, x*y)"), prm, oracle);
  tab.first_match = match_chain(tab.first, parse_chain("1 + w*"), {{"0", 0}, {"(S, x^2)", 1}, {"(D, x^3)", 1}}, oracle);
  tab.second_match = match_chain(tab.second, parse_chain("1 + Z + w*"),
                                 {{"0", 0}, {"(B, x*y)", 1}, {"(X_1, n)", 1}, {"(M_1, n)", 1}, {"(C, x*y)", 2},
                                  {"(D, x*y)", 2}},
                                 oracle);

  std::vector<PointModel> points;
  for (const auto& id : catalog_ids(k_max)) points.push_back(catalog_point(id));
  for (const auto& p : limit_points()) points.push_back(p);
  const unsigned K = k_max;
  const int t0 = std::min(t, 6);

  auto finish = [&](CBEntry& e) {
    e.open = open_set_membership(f, e.pair, e.point, K, t, oracle).open;
    for (const auto& q : points) {
      if (q == e.point || point_rank(q) < e.level) continue;
      if (open_set_membership(f, e.pair, q, K, t, oracle).open) e.also_open.push_back(to_string(q));
    }
    e.isolates = e.also_open.empty();
    tab.entries.push_back(std::move(e));
  };

  // level 0
  {
    CBEntry e{catalog_point({Family::S}), parse_pair(f, "(S, x^2)", "(X_1, m*x^2)")};
    e.simple = simple_at_zero(e.pair, k_max, t0, oracle);
    finish(e);
  }
  for (auto [fam, k] : ar_sequence_ids(k_max)) {
    auto seq = ar_sequence(f, fam, k);
    auto pair_at = [&](unsigned g) {
      Elem l = Elem::term(f, g);
      return Pair{make_pointed(seq.left, l), make_pointed(seq.middle, seq.f.apply(l))};
    };
    CBEntry e{catalog_point(parse_family_id(seq.left->name())), pair_at(0)};
    for (unsigned g = 0; g < seq.left->num_gens(); ++g) {
      Pair pr = pair_at(g);
      if (simple_at_zero(pr, k_max, t0, oracle)) {
        e.pair = pr;
        e.simple = true;
        break;
      }
    }
    e.note = "left almost split map of " + seq.id;
    finish(e);
  }

  // level 1
  const PointModel Dp = catalog_point({Family::D}), Cp = catalog_point({Family::C});
  const PointModel Nt = limit_point(PointKind::Ntilde), Rt = limit_point(PointKind::Rtilde);
  auto add_level = [&](PointModel p, const char* phi, const char* psi, unsigned level, const CollapseStudy& s) {
    CBEntry e{p, parse_pair(f, phi, psi), level};
    auto l = level_check(s, e.pair, level, oracle, e.note);
    e.simple = l.simple;
    e.not_lower = l.not_lower;
    return e;
  };
  {
    auto e = add_level(Dp, "(D, x^3)", "(S, x^3)", 1, tab.first);
    finish(e);
  }
  {
    auto e = add_level(Nt, "(S, x^2)", "(D, x^3)", 1, tab.first);
    e.neg_isolated = true;
    e.neg_isolation = neg_isolation_check(f, tab.first.windows[0], oracle, {Nt, "m*x^2", K + 2},
                                          parse_pointed(f, "(D, x^3)"));
    finish(e);
  }
  {
    auto e = add_level(Cp, "(C, x*y)", "(D, x*y)", 1, tab.second);
    finish(e);
  }
  {
    auto e = add_level(Rt, "(M_1, n)", "(X_1, n)", 1, tab.second);
    e.neg_isolated = true;
    e.neg_isolation = neg_isolation_check(f, tab.second.windows[0], oracle,
                                          {Rt, "n*y^" + std::to_string(K + 1), K + 2}, parse_pointed(f, "(X_1, n)"));
    // (M_1, m) in place of (M_1, n)
    auto listed = parse_pair(f, "(M_1, m)", "(X_1, n)");
    bool below = oracle.leq(listed.psi, listed.phi);
    bool open = open_set_membership(f, listed, Rt, K, t, oracle).open;
    tab.notes.push_back(std::string("R~ pair (M_1, m) / (X_1, n): ") + (below ? "" : "not ") +
                        "an interval, " + (open ? "" : "not ") + "open on R~; (M_1, n) / (X_1, n) used");
    finish(e);
  }
  // level 2
  {
    auto e = add_level(limit_point(PointKind::QR), "(B, x*y)", "0", 2, tab.second);
    finish(e);
  }
  {
    auto e = add_level(limit_point(PointKind::Gy), "(C, x*y)", "(B, x*y)", 2, tab.second);
    finish(e);
  }
  {
    auto e = add_level(limit_point(PointKind::Gx), "(S, x^2)", "0", 2, tab.first);
    finish(e);
  }

  auto vx = parse_pair(f, "(C, x*y)", "0");
  for (const auto& q : points)
    if (!open_set_membership(f, vx, q, K, t, oracle).open) tab.closed_for_vx.push_back(to_string(q));
  return tab;
}

nlohmann::json to_json(const CBTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json r = {{"point", to_string(e.point)}, {"pair", e.pair.to_string()}, {"rank", e.level},
                        {"open", e.open},                {"simple", e.simple},          {"not_lower", e.not_lower},
                        {"isolates", e.isolates},        {"also_open", e.also_open},    {"neg_isolated", e.neg_isolated},
                        {"ok", e.ok()}};
    if (e.neg_isolation) r["neg_isolation_verified"] = *e.neg_isolation;
    if (!e.note.empty()) r["note"] = e.note;
    rows.push_back(r);
  }
  auto chain = [](const ChainMatch& m) {
    return nlohmann::json{{"symbolic", m.symbolic.to_string()},      {"derivative", m.derivative.to_string()},
                          {"window_groups", m.window_derivative.to_string()}, {"chain", m.chain},
                          {"bottom_alone", m.bottom_alone},          {"grows", m.grows},
                          {"anchors", m.anchors_ok},                 {"ok", m.ok()},
                          {"failures", m.failures}};
  };
  return {{"k_max", t.k_max},
          {"depth", t.t},
          {"entries", rows},
          {"first_interval", chain(t.first_match)},
          {"second_interval", chain(t.second_match)},
          {"closed_for_vx", t.closed_for_vx},
          {"notes", t.notes},
          {"ok", t.ok()}};
}

std::string to_markdown(const CBTable& t) {
  std::ostringstream os;
  os << "| point | pair | rank | open | simple | isolates | neg-isolated | ok |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (const auto& e : t.entries)
    os << "| " << to_string(e.point) << " | " << e.pair.to_string() << " | " << e.level << " | " << yn(e.open)
       << " | " << yn(e.simple) << " | " << yn(e.isolates) << " | "
       << (e.neg_isolated ? (e.neg_isolation.value_or(false) ? "yes (verified)" : "yes (unverified)") : "no")
       << " | " << yn(e.ok()) << " |\n";
  return os.str();
}

}  // namespace dinf
