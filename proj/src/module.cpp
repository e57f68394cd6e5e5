#include "dinf/module.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dinf {

// ------------------------------------------------------------------- Elem

Elem Elem::term(PrimeField f, unsigned gen, Monomial m, Coeff c) {
  Elem e(f);
  e.add_term({gen, m}, c);
  return e;
}

Coeff Elem::coeff(const Term& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? 0 : it->second;
}

void Elem::add_term(const Term& t, Coeff c) {
  if (!t.mono.is_normal()) return;
  c %= f_.prime();
  if (!c) return;
  Coeff v = f_.add(coeff(t), c);
  if (v) terms_[t] = v; else terms_.erase(t);
}

Elem Elem::operator+(const Elem& o) const {
  Elem r = *this;
  for (const auto& [t, c] : o.terms_) r.add_term(t, c);
  return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::scaled(Coeff c) const {
  Elem r(f_);
  for (const auto& [t, v] : terms_) r.add_term(t, f_.mul(v, c));
  return r;
}

Elem Elem::times(const Monomial& m) const {
  Elem r(f_);
  for (const auto& [t, c] : terms_)
    if (auto p = mul(t.mono, m)) r.add_term({t.gen, *p}, c);
  return r;
}

Elem Elem::times(const SElem& s) const {
  Elem r(f_);
  for (const auto& [m, c] : s.terms()) r = r + times(m).scaled(c);
  return r;
}

// ----------------------------------------------------------- ThreadModule

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

// w with g * w = s for homogeneous g, solved degreewise.
std::optional<SElem> divide_by(const SElem& s, const SElem& g) {
  const PrimeField& f = s.field();
  SElem w(f);
  if (s.is_zero()) return w;
  unsigned gd = g.degree();
  std::set<unsigned> degs;
  for (const auto& [m, c] : s.terms()) degs.insert(m.degree());
  for (unsigned d : degs) {
    if (d < gd) return std::nullopt;
    auto src = monomials_of_degree(d - gd);
    auto dst = monomials_of_degree(d);
    Mat a(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      SElem img = SElem::monomial(f, src[j]) * g;
      for (std::size_t i = 0; i < dst.size(); ++i) a.at(i, j) = img.coeff(dst[i]);
    }
    Vec rhs(dst.size());
    for (std::size_t i = 0; i < dst.size(); ++i) rhs[i] = s.coeff(dst[i]);
    auto sol = solve(f, a, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t j = 0; j < src.size(); ++j) w = w + SElem::monomial(f, src[j], (*sol)[j]);
  }
  return w;
}

std::string format_terms(const PrimeField& f, const std::vector<std::pair<std::string, Coeff>>& parts) {
  if (parts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, c] : parts) {
    long long v = f.to_signed(c);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    long long a = v < 0 ? -v : v;
    if (a != 1) os << a << "*";
    os << label;
    first = false;
  }
  return os.str();
}

}  // namespace

ThreadModule::ThreadModule(PrimeField f, Spec spec) : f_(f), spec_(std::move(spec)) {
  if (spec_.gen_names.size() != spec_.gen_degrees.size())
    throw AlgebraError("generator names and degrees differ in length");
  std::set<std::string> seen;
  for (const auto& n : spec_.gen_names) {
    if (!is_identifier(n) || n == "x" || n == "y") throw AlgebraError("bad generator name '" + n + "'");
    if (!seen.insert(n).second) throw AlgebraError("duplicate generator name '" + n + "'");
  }
  std::vector<Elem> rels;
  for (const auto& r : spec_.relations) {
    if (r.is_zero()) continue;
    for (const auto& [t, c] : r.terms())
      if (t.gen >= num_gens()) throw AlgebraError("relation mentions an unknown generator");
    homogeneous_degree(r);
    rels.push_back(r);
  }
  spec_.relations = std::move(rels);
  if (spec_.display_image && num_gens() != 1) throw AlgebraError("display image needs a single generator");
}

int ThreadModule::min_gen_degree() const {
  if (spec_.gen_degrees.empty()) return 0;
  return *std::min_element(spec_.gen_degrees.begin(), spec_.gen_degrees.end());
}

int ThreadModule::max_gen_degree() const {
  if (spec_.gen_degrees.empty()) return 0;
  return *std::max_element(spec_.gen_degrees.begin(), spec_.gen_degrees.end());
}

int ThreadModule::max_relation_degree() const {
  int d = min_gen_degree();
  for (const auto& r : spec_.relations) d = std::max(d, homogeneous_degree(r));
  return d;
}

std::vector<int> ThreadModule::degrees(const Elem& e) const {
  std::set<int> s;
  for (const auto& [t, c] : e.terms()) s.insert(degree(t));
  return {s.begin(), s.end()};
}

Elem ThreadModule::component(const Elem& e, int d) const {
  Elem out(f_);
  for (const auto& [t, c] : e.terms())
    if (degree(t) == d) out.add_term(t, c);
  return out;
}

int ThreadModule::homogeneous_degree(const Elem& e) const {
  auto ds = degrees(e);
  if (ds.size() != 1) throw AlgebraError("element is not homogeneous: " + to_string(e, false));
  return ds[0];
}

const ThreadModule::Piece& ThreadModule::piece(int d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return *it->second;
  auto p = std::make_unique<Piece>();
  for (unsigned g = 0; g < num_gens(); ++g) {
    int e = d - gen_degree(g);
    if (e < 0) continue;
    for (const auto& m : monomials_of_degree(static_cast<unsigned>(e))) p->free.push_back({g, m});
  }
  // x-heavy terms first so they become pivots and the y-threads survive.
  std::stable_sort(p->free.begin(), p->free.end(), [](const Term& l, const Term& r) {
    if (l.mono.a != r.mono.a) return l.mono.a > r.mono.a;
    return l.gen < r.gen;
  });
  for (std::size_t i = 0; i < p->free.size(); ++i) p->index[p->free[i]] = i;
  p->rel = Subspace(p->free.size());
  for (const auto& r : spec_.relations) {
    int rd = degree(r.terms().begin()->first);
    if (rd > d) continue;
    for (const auto& mu : monomials_of_degree(static_cast<unsigned>(d - rd))) {
      Elem img = r.times(mu);
      if (img.is_zero()) continue;
      p->rel.add(f_, free_vector(img, d, *p));
    }
  }
  std::vector<bool> piv(p->free.size(), false);
  for (auto c : p->rel.pivots()) piv[c] = true;
  p->node_of.assign(p->free.size(), -1);
  for (std::size_t i = 0; i < p->free.size(); ++i)
    if (!piv[i]) {
      p->node_of[i] = static_cast<long>(p->nodes.size());
      p->nodes.push_back(i);
    }
  const Piece& ref = *p;
  cache_.emplace(d, std::move(p));
  return ref;
}

Vec ThreadModule::free_vector(const Elem& e, int d, const Piece& p) const {
  Vec v(p.free.size(), 0);
  for (const auto& [t, c] : e.terms()) {
    if (degree(t) != d) continue;
    v[p.index.at(t)] = c;
  }
  return v;
}

std::size_t ThreadModule::dim(int d) const { return piece(d).nodes.size(); }

std::vector<Term> ThreadModule::nodes(int d) const {
  const Piece& p = piece(d);
  std::vector<Term> out;
  for (auto i : p.nodes) out.push_back(p.free[i]);
  return out;
}

Vec ThreadModule::coords(const Elem& e, int d) const {
  const Piece& p = piece(d);
  Vec red = p.rel.reduce(f_, free_vector(e, d, p));
  Vec out(p.nodes.size(), 0);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) out[i] = red[p.nodes[i]];
  return out;
}

Elem ThreadModule::from_coords(int d, const Vec& v) const {
  const Piece& p = piece(d);
  Elem out(f_);
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    if (v[i]) out.add_term(p.free[p.nodes[i]], v[i]);
  return out;
}

Elem ThreadModule::normal_form(const Elem& e) const {
  Elem out(f_);
  for (int d : degrees(e)) out = out + from_coords(d, coords(e, d));
  return out;
}

bool ThreadModule::is_zero(const Elem& e) const {
  for (int d : degrees(e))
    if (!is_zero_vec(coords(e, d))) return false;
  return true;
}

Mat ThreadModule::action(int d, const Monomial& m) const {
  int to = d + static_cast<int>(m.degree());
  auto src = nodes(d);
  Mat a(dim(to), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Vec c = coords(Elem::term(f_, src[j].gen, src[j].mono).times(m), to);
    for (std::size_t i = 0; i < c.size(); ++i) a.at(i, j) = c[i];
  }
  return a;
}

Elem ThreadModule::parse(const std::string& text) const {
  std::vector<std::string> vars = spec_.gen_names;
  vars.push_back("x");
  vars.push_back("y");
  RawPoly raw = parse_polynomial(text, vars, f_);
  const std::size_t ng = num_gens();
  Elem out(f_);
  SElem bare(f_);
  for (const auto& [ex, c] : raw) {
    unsigned total = 0, which = 0;
    for (unsigned g = 0; g < ng; ++g)
      if (ex[g]) {
        total += ex[g];
        which = g;
      }
    Monomial m{ex[ng], ex[ng + 1]};
    if (total == 1) {
      out.add_term({which, m}, c);
    } else if (total == 0) {
      bare = bare + SElem::monomial(f_, m, c);
    } else {
      throw AlgebraError("'" + text + "' is not linear in the generators");
    }
  }
  if (!bare.is_zero()) {
    if (ng != 1) throw AlgebraError("'" + text + "' has a term without a generator");
    SElem img = spec_.display_image ? *spec_.display_image : SElem::one(f_);
    auto w = divide_by(bare, img);
    if (!w) throw AlgebraError("'" + text + "' does not lie in " + name());
    out = out + Elem::term(f_, 0).times(*w);
  }
  return out;
}

std::string ThreadModule::to_string(const Elem& e, bool reduce) const {
  Elem n = reduce ? normal_form(e) : e;
  if (spec_.display_image) {
    SElem s(f_);
    for (const auto& [t, c] : n.terms()) s = s + (*spec_.display_image * SElem::monomial(f_, t.mono, c));
    return s.to_string();
  }
  std::vector<std::pair<Term, Coeff>> ts(n.terms().begin(), n.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& l, const auto& r) {
    if (degree(l.first) != degree(r.first)) return degree(l.first) < degree(r.first);
    return l.first < r.first;
  });
  std::vector<std::pair<std::string, Coeff>> parts;
  for (const auto& [t, c] : ts) parts.emplace_back(label(t), c);
  return format_terms(f_, parts);
}

std::string ThreadModule::label(const Term& t) const {
  std::string s = spec_.gen_names.at(t.gen);
  if (t.mono.degree()) s += "*" + dinf::to_string(t.mono);
  return s;
}

std::vector<Elem> ThreadModule::socle(int upto) const {
  std::vector<Elem> out;
  for (int d = min_gen_degree(); d < upto; ++d) {
    std::size_t n = dim(d);
    if (!n) continue;
    Mat ax = action(d, {1, 0}), ay = action(d, {0, 1});
    Mat st(ax.rows() + ay.rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < ax.rows(); ++i) st.at(i, j) = ax.at(i, j);
      for (std::size_t i = 0; i < ay.rows(); ++i) st.at(ax.rows() + i, j) = ay.at(i, j);
    }
    for (const auto& v : kernel(f_, st)) out.push_back(from_coords(d, v));
  }
  return out;
}

MatrixModule ThreadModule::truncate(unsigned t) const {
  MatrixModule mm;
  mm.depth = t;
  std::map<Term, std::size_t> idx;
  for (int d = min_gen_degree(); d <= max_gen_degree() + static_cast<int>(t); ++d)
    for (const auto& n : nodes(d))
      if (n.mono.degree() <= t) {
        idx[n] = mm.basis.size();
        mm.basis.push_back(n);
        mm.basis_labels.push_back(label(n));
      }
  mm.dim = mm.basis.size();
  mm.X = Mat(mm.dim, mm.dim);
  mm.Y = Mat(mm.dim, mm.dim);
  std::set<std::string> lost;
  for (std::size_t j = 0; j < mm.dim; ++j) {
    const Term& src = mm.basis[j];
    for (int v = 0; v < 2; ++v) {
      Monomial m = v == 0 ? Monomial{1, 0} : Monomial{0, 1};
      int to = degree(src) + 1;
      Elem img = from_coords(to, coords(Elem::term(f_, src.gen, src.mono).times(m), to));
      Mat& target = v == 0 ? mm.X : mm.Y;
      for (const auto& [tt, c] : img.terms()) {
        auto it = idx.find(tt);
        if (it == idx.end()) {
          lost.insert(label(tt));
          continue;
        }
        target.at(it->second, j) = c;
      }
    }
  }
  mm.out_of_window.assign(lost.begin(), lost.end());
  return mm;
}

ModulePtr ThreadModule::shifted(int s) const {
  if (s == 0) return make(f_, spec_);
  Spec sp = spec_;
  for (auto& d : sp.gen_degrees) d += s;
  sp.name = spec_.name + "[" + std::to_string(s) + "]";
  return make(f_, std::move(sp));
}

ModulePtr ThreadModule::quotient(const std::vector<Elem>& extra, std::string name) const {
  Spec sp = spec_;
  sp.name = std::move(name);
  for (const auto& e : extra) {
    if (e.is_zero()) continue;
    for (int d : degrees(e)) sp.relations.push_back(component(e, d));
  }
  return make(f_, std::move(sp));
}

nlohmann::json ThreadModule::to_json(int window) const {
  nlohmann::json gens = nlohmann::json::array();
  for (unsigned g = 0; g < num_gens(); ++g) gens.push_back({{"name", spec_.gen_names[g]}, {"degree", gen_degree(g)}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : spec_.relations) rels.push_back(to_string(r, false));
  nlohmann::json hilb = nlohmann::json::array();
  nlohmann::json threads = nlohmann::json::array();
  int lo = min_gen_degree();
  for (int d = lo; d < lo + window; ++d) {
    hilb.push_back(dim(d));
    for (const auto& n : nodes(d)) threads.push_back({{"node", label(n)}, {"degree", d}});
  }
  return {{"name", name()},      {"prime", f_.prime()}, {"generators", gens}, {"relations", rels},
          {"hilbert_from", lo}, {"hilbert", hilb},     {"threads", threads}};
}

// --------------------------------------------------------- constructions

ModulePtr direct_sum(const std::vector<ModulePtr>& parts, std::string name) {
  if (parts.empty()) throw AlgebraError("empty direct sum");
  PrimeField f = parts[0]->field();
  ThreadModule::Spec sp;
  std::set<std::string> used;
  unsigned off = 0;
  for (const auto& p : parts) {
    for (unsigned g = 0; g < p->num_gens(); ++g) {
      std::string n = p->gen_names()[g];
      while (used.count(n)) n += "'";
      used.insert(n);
      sp.gen_names.push_back(n);
      sp.gen_degrees.push_back(p->gen_degree(g));
    }
    for (const auto& r : p->relations()) {
      Elem s(f);
      for (const auto& [t, c] : r.terms()) s.add_term({t.gen + off, t.mono}, c);
      sp.relations.push_back(s);
    }
    off += static_cast<unsigned>(p->num_gens());
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "+" : "") + parts[i]->name();
  }
  sp.name = std::move(name);
  return ThreadModule::make(f, std::move(sp));
}

Elem inject(const std::vector<ModulePtr>& parts, std::size_t i, const Elem& e) {
  unsigned off = 0;
  for (std::size_t j = 0; j < i; ++j) off += static_cast<unsigned>(parts[j]->num_gens());
  Elem out(e.field());
  for (const auto& [t, c] : e.terms()) out.add_term({t.gen + off, t.mono}, c);
  return out;
}

ModulePtr free_module(PrimeField f, std::vector<int> degrees, std::string name) {
  ThreadModule::Spec sp;
  sp.name = std::move(name);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    sp.gen_names.push_back(degrees.size() == 1 ? "g" : "g" + std::to_string(i));
  sp.gen_degrees = std::move(degrees);
  return ThreadModule::make(f, std::move(sp));
}

SubmodulePresentation present_submodule(const ModulePtr& ambient, const std::vector<Elem>& gens,
                                        std::vector<std::string> names, int t, std::string name) {
  const PrimeField& f = ambient->field();
  std::vector<int> degs;
  for (const auto& g : gens) degs.push_back(ambient->homogeneous_degree(g));
  if (names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("g" + std::to_string(i));
  ModulePtr free = free_module(f, degs, "F");
  std::vector<Elem> rels;
  int last_new = free->min_gen_degree() - 1;
  std::vector<Elem> prev_kernel;
  for (int d = free->min_gen_degree(); d <= t; ++d) {
    auto basis = free->nodes(d);
    Mat phi(ambient->dim(d), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Vec c = ambient->coords(gens[basis[j].gen].times(basis[j].mono), d);
      for (std::size_t i = 0; i < c.size(); ++i) phi.at(i, j) = c[i];
    }
    Subspace known(basis.size());
    for (const auto& k : prev_kernel)
      for (Monomial m : {Monomial{1, 0}, Monomial{0, 1}}) known.add(f, free->coords(k.times(m), d));
    std::vector<Elem> cur;
    for (const auto& v : kernel(f, phi)) {
      cur.push_back(free->from_coords(d, v));
      if (known.add(f, v)) {
        rels.push_back(free->from_coords(d, v));
        last_new = d;
      }
    }
    prev_kernel = std::move(cur);
  }
  ThreadModule::Spec sp;
  sp.name = std::move(name);
  sp.gen_names = std::move(names);
  sp.gen_degrees = degs;
  sp.relations = std::move(rels);
  return {ThreadModule::make(f, std::move(sp)), last_new < t - 2};
}

CmReduction cm_reduce(const ModulePtr& m, int window) {
  CmReduction r{m, 0, 0};
  while (true) {
    auto soc = window < 0 ? r.module->socle() : r.module->socle(window);
    if (soc.empty()) break;
    if (r.rounds >= 64) throw AlgebraError("socle reduction did not terminate");
    r.removed += soc.size();
    ++r.rounds;
    r.module = r.module->quotient(soc, m->name());
  }
  return r;
}

bool is_zero_module(const ModulePtr& m) {
  for (unsigned g = 0; g < m->num_gens(); ++g)
    if (!m->is_zero(Elem::term(m->field(), g))) return false;
  return true;
}

}  // namespace dinf
