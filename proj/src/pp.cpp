#include "dinf/pp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

namespace dinf {

PointedModule make_pointed(ModulePtr m, const Elem& point, std::string label) {
  Elem p = m->normal_form(point);
  if (!p.is_zero()) m->homogeneous_degree(p);
  if (label.empty()) label = "(" + m->name() + ", " + m->to_string(p) + ")";
  return {std::move(m), std::move(p), std::move(label)};
}

PointedModule make_pointed(ModulePtr m, const std::string& point) {
  Elem p = m->parse(point);
  return make_pointed(std::move(m), p);
}

PointedModule make_pointed(PrimeField f, FamilyId id, const std::string& point) {
  return make_pointed(make(f, id), point);
}

PointedModule bottom(PrimeField f) { return make_pointed(make(f, {Family::S}), Elem(f), "0"); }

PointedModule parse_pointed(PrimeField f, const std::string& text) {
  std::string s = std::regex_replace(text, std::regex("^\\s+|\\s+$"), "");
  if (s == "0") return bottom(f);
  // top-level sums "(A, x^4) + (S, x^3)"
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '+' && depth == 0)
      return psum(parse_pointed(f, s.substr(0, i)), parse_pointed(f, s.substr(i + 1)));
  }
  static const std::regex re("^\\(\\s*([^,]+?)\\s*,\\s*(.+?)\\s*\\)$");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw AlgebraError("cannot parse pointed module '" + text + "'");
  return make_pointed(f, parse_family_id(mt[1]), mt[2]);
}

PointedModule psum(const PointedModule& a, const PointedModule& b) {
  if (b.is_bottom()) return a;
  if (a.is_bottom()) return b;
  ModulePtr bs = b.module->shifted(a.degree() - b.degree());
  std::vector<ModulePtr> parts{a.module, bs};
  ModulePtr e = direct_sum(parts);
  Elem p = inject(parts, 0, a.point) + inject(parts, 1, b.point);
  return make_pointed(e, p, a.label + "+" + b.label);
}

PointedModule pconj(const PointedModule& a, const PointedModule& b) {
  if (a.is_bottom()) return a;
  if (b.is_bottom()) return b;
  ModulePtr bs = b.module->shifted(a.degree() - b.degree());
  std::vector<ModulePtr> parts{a.module, bs};
  ModulePtr e = direct_sum(parts);
  Elem pa = inject(parts, 0, a.point);
  ModulePtr k = e->quotient({pa - inject(parts, 1, b.point)}, "(" + a.label + "&" + b.label + ")");
  ModulePtr red = cm_reduce(k).module;
  return make_pointed(red, pa, a.label + "&" + b.label);
}

// ------------------------------------------------------------------ oracle

const Subspace& PointedOracle::image(const PointedModule& src, const ModulePtr& tgt, int d) {
  Key key{src.module.get(), src.module->to_string(src.point, false), tgt.get(), d};
  auto it = images_.find(key);
  if (it != images_.end()) return it->second;
  keep_.push_back(src.module);
  keep_.push_back(tgt);
  Subspace s(tgt->dim(d));
  if (!src.is_bottom() && s.ambient() > 0) {
    int e = d - src.degree();
    if (e >= hom_min_degree(*src.module, *tgt)) {
      const PrimeField& f = tgt->field();
      for (const auto& h : homs_.get(src.module, tgt, e)) s.add(f, tgt->coords(h.apply(src.point), d));
    }
  }
  return images_.emplace(key, std::move(s)).first->second;
}

bool PointedOracle::leq(const PointedModule& a, const PointedModule& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  const PrimeField& f = a.module->field();
  for (int d : a.module->degrees(a.point)) {
    Vec v = a.module->coords(a.point, d);
    if (is_zero_vec(v)) continue;
    if (!image(b, a.module, d).contains(f, v)) return false;
  }
  return true;
}

bool PointedOracle::leq_sum(const PointedModule& a, const std::vector<const PointedModule*>& summands) {
  if (a.is_bottom()) return true;
  const PrimeField& f = a.module->field();
  for (int d : a.module->degrees(a.point)) {
    Vec v = a.module->coords(a.point, d);
    if (is_zero_vec(v)) continue;
    Subspace s(a.module->dim(d));
    for (const auto* b : summands)
      if (!b->is_bottom())
        for (const auto& r : image(*b, a.module, d).basis()) s.add(f, r);
    if (!s.contains(f, v)) return false;
  }
  return true;
}

std::uint32_t annihilator_signature(const PointedModule& p) {
  std::uint32_t sig = 0;
  unsigned bit = 0;
  for (unsigned i = 0; i <= 2; ++i)
    for (unsigned j = 0; j <= 6; ++j, ++bit)
      if (p.module->is_zero(p.point.times(Monomial{i, j}))) sig |= 1u << bit;
  return sig;
}

// ----------------------------------------------------------------- pattern

std::optional<std::size_t> PatternPoset::find(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].pm.label == label) return i;
  return std::nullopt;
}

std::vector<std::size_t> PatternPoset::down_set(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    if (leq[j][i]) out.push_back(j);
  return out;
}

namespace {

// Nonzero vectors of the span of `basis` up to scalars.
std::vector<Vec> projective_points(const PrimeField& f, const std::vector<Vec>& basis, std::size_t cap) {
  std::vector<Vec> out;
  std::size_t r = basis.size();
  if (!r) return out;
  std::size_t total = 0, pw = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total += pw;
    pw *= f.prime();
    if (total > cap) throw AlgebraError("pattern enumeration exceeds the candidate cap");
  }
  // lead index l: coefficient 1 at l, zeros before, anything after
  for (std::size_t l = 0; l < r; ++l) {
    std::size_t rest = r - l - 1, count = 1;
    for (std::size_t i = 0; i < rest; ++i) count *= f.prime();
    for (std::size_t c = 0; c < count; ++c) {
      Vec v(basis[0].size(), 0);
      auto axpy = [&](Coeff s, const Vec& b) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(s, b[i]));
      };
      axpy(1, basis[l]);
      std::size_t cc = c;
      for (std::size_t i = l + 1; i < r; ++i) {
        axpy(static_cast<Coeff>(cc % f.prime()), basis[i]);
        cc /= f.prime();
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

struct Candidate {
  FamilyId id;
  PointedModule pm;
  std::string key;
  std::uint32_t sig;
};

bool sig_leq(std::uint32_t lower, std::uint32_t upper) { return (upper & ~lower) == 0; }

}  // namespace

std::vector<std::pair<FamilyId, PointedModule>> pattern_candidates(const PointedModule& seed, unsigned k_max, int t,
                                                                   PointedOracle& oracle, std::size_t cap) {
  if (seed.is_bottom()) throw AlgebraError("pattern seed must be nonzero");
  const PrimeField& f = seed.module->field();
  const int a = seed.degree();
  std::vector<std::pair<FamilyId, PointedModule>> out;
  for (const auto& id : catalog_ids(k_max)) {
    ModulePtr n = make(f, id);
    int lo = std::max(a + hom_min_degree(*seed.module, *n), n->min_gen_degree());
    for (int d = lo; d <= a + t; ++d) {
      const Subspace& v = oracle.image(seed, n, d);
      for (const auto& c : projective_points(f, v.basis(), cap)) {
        PointedModule pm = make_pointed(n, n->from_coords(d, c));
        pm.label = "(" + to_string(id) + ", " + n->to_string(pm.point) + ")";
        out.emplace_back(id, std::move(pm));
        if (out.size() > cap) throw AlgebraError("pattern enumeration exceeds the candidate cap");
      }
    }
  }
  return out;
}

PatternPoset pattern(const PointedModule& seed, unsigned k_max, int t, PointedOracle& oracle, std::size_t cap) {
  const PrimeField& f = seed.module->field();
  PatternPoset P{seed, k_max, t, {}, {}, {}};
  std::vector<Candidate> cands;
  for (auto& [id, pm] : pattern_candidates(seed, k_max, t, oracle, cap)) {
    std::string key = pm.label;
    auto sig = annihilator_signature(pm);
    cands.push_back({id, std::move(pm), std::move(key), sig});
  }
  P.candidates = cands.size();
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
    if (!(l.id == r.id)) return l.id < r.id;
    if (l.key.size() != r.key.size()) return l.key.size() < r.key.size();
    return l.key < r.key;
  });
  std::vector<std::uint32_t> sigs;
  for (auto& c : cands) {
    bool placed = false;
    for (std::size_t i = 0; i < P.nodes.size(); ++i) {
      if (sigs[i] != c.sig) continue;
      if (oracle.equivalent(c.pm, P.nodes[i].pm)) {
        ++P.nodes[i].members;
        placed = true;
        break;
      }
    }
    if (!placed) {
      P.nodes.push_back({c.pm, c.id, 1});
      sigs.push_back(c.sig);
    }
  }
  P.nodes.push_back({bottom(f), std::nullopt, 1});
  sigs.push_back(~0u);
  std::size_t n = P.nodes.size();
  P.bottom = n - 1;
  P.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        P.leq[i][j] = 1;
        continue;
      }
      if (!sig_leq(sigs[i], sigs[j])) continue;
      P.leq[i][j] = oracle.leq(P.nodes[i].pm, P.nodes[j].pm);
    }
  P.top = n;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (oracle.equivalent(P.nodes[i].pm, seed)) P.top = i;
  if (P.top == n) throw AlgebraError("seed is not equivalent to a catalog node");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!P.less(j, i)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (P.less(j, k) && P.less(k, i)) cover = false;
      if (cover) P.covers.emplace_back(i, j);
    }
  return P;
}

std::vector<char> down_set(const PatternPoset& p, PointedOracle& oracle, const PointedModule& phi) {
  std::vector<char> out(p.nodes.size(), 0);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) out[i] = oracle.leq(p.nodes[i].pm, phi);
  return out;
}

// ---------------------------------------------------------------- interval

IntervalWindow interval_window(const PatternPoset& p, PointedOracle& oracle, std::size_t meet_samples,
                               std::size_t triple_samples, std::uint64_t seed) {
  IntervalWindow w;
  const std::size_t n = p.nodes.size();
  w.nodes = n;
  auto fail = [&](std::string msg) {
    if (w.failures.size() < 20) w.failures.push_back(std::move(msg));
  };
  auto down = [&](std::size_t i) {
    std::vector<char> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = p.leq[j][i];
    return d;
  };
  std::vector<std::pair<std::size_t, std::size_t>> anti;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!p.leq[i][j] && !p.leq[j][i]) anti.emplace_back(i, j);
  w.antichain_pairs = anti.size();

  // sums: v <= b + c only for the trivial reason
  for (auto [b, c] : anti) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v == p.bottom) continue;
      ++w.sum_checks;
      bool in_sum = oracle.leq_sum(p.nodes[v].pm, {&p.nodes[b].pm, &p.nodes[c].pm});
      bool trivial = p.leq[v][b] || p.leq[v][c];
      if (in_sum != trivial) {
        w.sum_trivial = false;
        fail(p.nodes[v].pm.label + " vs " + p.nodes[b].pm.label + "+" + p.nodes[c].pm.label);
      }
    }
  }

  // join-irreducibility: a node is not below the sum of its lower covers
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p.bottom) continue;
    std::vector<const PointedModule*> lower;
    for (auto [u, l] : p.covers)
      if (u == i) lower.push_back(&p.nodes[l].pm);
    if (oracle.leq_sum(p.nodes[i].pm, lower)) {
      w.join_irreducible = false;
      fail(p.nodes[i].pm.label + " is a sum of lower nodes");
    }
  }

  std::mt19937_64 rng(seed);
  // meets: conjunction has the intersection of the down-sets
  std::vector<std::pair<std::size_t, std::size_t>> pool = anti;
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > meet_samples) pool.resize(meet_samples);
  for (auto [a, b] : pool) {
    ++w.meet_checks;
    auto got = down_set(p, oracle, pconj(p.nodes[a].pm, p.nodes[b].pm));
    auto da = down(a), db = down(b);
    for (std::size_t j = 0; j < n; ++j) {
      if (got[j] != (da[j] && db[j])) {
        w.meets_are_intersections = false;
        fail("meet of " + p.nodes[a].pm.label + " and " + p.nodes[b].pm.label);
        break;
      }
    }
  }

  // distributivity on sampled triples, with the lattice operations computed
  std::vector<std::size_t> inner;
  for (std::size_t i = 0; i < n; ++i)
    if (i != p.bottom) inner.push_back(i);
  for (std::size_t s = 0; s < triple_samples && inner.size() >= 3; ++s) {
    std::size_t a = inner[rng() % inner.size()], b = inner[rng() % inner.size()], c = inner[rng() % inner.size()];
    ++w.triples;
    const auto &A = p.nodes[a].pm, &B = p.nodes[b].pm, &C = p.nodes[c].pm;
    auto lhs = down_set(p, oracle, pconj(A, psum(B, C)));
    auto rhs = down_set(p, oracle, psum(pconj(A, B), pconj(A, C)));
    auto da = down(a), db = down(b), dc = down(c);
    for (std::size_t j = 0; j < n; ++j) {
      bool set = da[j] && (db[j] || dc[j]);
      if (lhs[j] != rhs[j] || lhs[j] != set) {
        w.distributive = false;
        fail("distributivity at " + A.label + ", " + B.label + ", " + C.label);
        break;
      }
    }
  }
  return w;
}

std::optional<std::size_t> interval_inner_count(const PatternPoset& p, std::size_t lower, std::size_t upper) {
  if (!p.leq[lower][upper]) return std::nullopt;
  std::vector<std::size_t> diff;
  for (std::size_t j = 0; j < p.nodes.size(); ++j)
    if (p.leq[j][upper] && !p.leq[j][lower]) diff.push_back(j);
  if (diff.size() > 20) return std::nullopt;
  // subsets of diff that are down-closed relative to the difference
  std::size_t count = 0;
  const std::size_t m = diff.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool closed = true;
    for (std::size_t i = 0; i < m && closed; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!(mask >> j & 1u) && p.leq[diff[j]][diff[i]]) {
          closed = false;
          break;
        }
    }
    if (closed) ++count;
  }
  return count - 2;  // exclude the two ends
}

nlohmann::json poset_json(const PatternPoset& p) {
  nlohmann::json nodes = nlohmann::json::array(), covers = nlohmann::json::array();
  for (const auto& n : p.nodes)
    nodes.push_back({{"label", n.pm.label},
                     {"module", n.id ? to_string(*n.id) : std::string("0")},
                     {"point", n.pm.module->to_string(n.pm.point)},
                     {"members", n.members}});
  for (auto [u, l] : p.covers) covers.push_back({u, l});
  return {{"seed", p.seed.label}, {"k_max", p.k_max}, {"depth", p.t},
          {"top", p.top},         {"nodes", nodes},   {"covers", covers}};
}

std::string poset_dot(const PatternPoset& p) {
  std::ostringstream os;
  os << "digraph pattern {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << p.nodes[i].pm.label << "\"";
    if (i == p.top) os << ", shape=box";
    os << "];\n";
  }
  for (auto [u, l] : p.covers) os << "  n" << u << " -> n" << l << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

}  // namespace dinf
