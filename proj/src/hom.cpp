#include "dinf/hom.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace dinf {

// --------------------------------------------------------------- Morphism

Morphism::Morphism(ModulePtr source, ModulePtr target, std::vector<Elem> images, std::string label)
    : src_(std::move(source)), tgt_(std::move(target)), img_(std::move(images)), label_(std::move(label)) {
  if (img_.size() != src_->num_gens())
    throw AlgebraError("morphism " + src_->name() + " -> " + tgt_->name() + " needs one image per generator");
  for (const auto& e : img_)
    for (const auto& [t, c] : e.terms())
      if (t.gen >= tgt_->num_gens()) throw AlgebraError("image mentions an unknown generator of " + tgt_->name());
  for (auto& e : img_) e = tgt_->normal_form(e);
  for (const auto& r : src_->relations())
    if (!tgt_->is_zero(apply_images(src_, img_, r)))
      throw AlgebraError("map " + src_->name() + " -> " + tgt_->name() + " does not kill relation " +
                         src_->to_string(r, false));
}

Morphism Morphism::parse(ModulePtr source, ModulePtr target, const std::vector<std::string>& images,
                         std::string label) {
  std::vector<Elem> img;
  for (const auto& s : images) img.push_back(target->parse(s));
  return {std::move(source), std::move(target), std::move(img), std::move(label)};
}

Morphism Morphism::identity(ModulePtr m) {
  std::vector<Elem> img;
  for (unsigned g = 0; g < m->num_gens(); ++g) img.push_back(Elem::term(m->field(), g));
  return {m, m, std::move(img), "id"};
}

Morphism Morphism::zero(ModulePtr source, ModulePtr target) {
  std::vector<Elem> img(source->num_gens(), Elem(source->field()));
  return {std::move(source), std::move(target), std::move(img), "0"};
}

Elem Morphism::apply(const Elem& e) const { return tgt_->normal_form(apply_images(src_, img_, e)); }

bool Morphism::is_zero() const {
  return std::all_of(img_.begin(), img_.end(), [](const Elem& e) { return e.is_zero(); });
}

std::optional<int> Morphism::degree() const {
  std::optional<int> deg;
  for (unsigned g = 0; g < img_.size(); ++g) {
    if (img_[g].is_zero()) continue;
    auto ds = tgt_->degrees(img_[g]);
    if (ds.size() != 1) return std::nullopt;
    int e = ds[0] - src_->gen_degree(g);
    if (deg && *deg != e) return std::nullopt;
    deg = e;
  }
  return deg;
}

Morphism Morphism::operator+(const Morphism& o) const {
  std::vector<Elem> img;
  for (std::size_t i = 0; i < img_.size(); ++i) img.push_back(img_[i] + o.img_.at(i));
  return {src_, tgt_, std::move(img), label_};
}

Morphism Morphism::scaled(Coeff c) const {
  std::vector<Elem> img;
  for (const auto& e : img_) img.push_back(e.scaled(c));
  return {src_, tgt_, std::move(img), label_};
}

bool Morphism::equals(const Morphism& o) const {
  if (!same_module(*src_, *o.src_) || !same_module(*tgt_, *o.tgt_)) return false;
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (!tgt_->equal(img_[i], o.img_[i])) return false;
  return true;
}

Mat Morphism::matrix(int d, int e) const {
  auto nodes = src_->nodes(d);
  Mat a(tgt_->dim(d + e), nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Elem img = apply_images(src_, img_, Elem::term(src_->field(), nodes[j].gen, nodes[j].mono));
    Vec c = tgt_->coords(img, d + e);
    for (std::size_t i = 0; i < c.size(); ++i) a.at(i, j) = c[i];
  }
  return a;
}

nlohmann::json Morphism::to_json() const {
  nlohmann::json im = nlohmann::json::object();
  for (unsigned g = 0; g < img_.size(); ++g) im[src_->gen_names()[g]] = tgt_->to_string(img_[g]);
  nlohmann::json j = {{"source", src_->name()}, {"target", tgt_->name()}, {"images", im}};
  if (!label_.empty()) j["label"] = label_;
  if (auto d = degree()) j["degree"] = *d;
  return j;
}

bool same_module(const ThreadModule& a, const ThreadModule& b) {
  if (&a == &b) return true;
  if (!(a.field() == b.field()) || a.gen_degrees() != b.gen_degrees()) return false;
  if (a.relations().size() != b.relations().size()) return false;
  for (std::size_t i = 0; i < a.relations().size(); ++i)
    if (!(a.relations()[i] == b.relations()[i])) return false;
  return true;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (!same_module(*f.target(), *g.source()))
    throw AlgebraError("cannot compose: " + f.target()->name() + " is not " + g.source()->name());
  std::vector<Elem> img;
  for (const auto& e : f.images()) img.push_back(g.apply(e));
  std::string label = f.label().empty() || g.label().empty() ? "" : g.label() + "*" + f.label();
  return {f.source(), g.target(), std::move(img), label};
}

// -------------------------------------------------------------------- Hom

int hom_min_degree(const ThreadModule& m, const ThreadModule& n) { return n.min_gen_degree() - m.max_gen_degree(); }

std::vector<Morphism> hom_degree(const ModulePtr& m, const ModulePtr& n, int e) {
  const PrimeField& f = m->field();
  std::vector<std::size_t> off;
  std::vector<std::vector<Term>> blocks;
  std::size_t unknowns = 0;
  for (unsigned g = 0; g < m->num_gens(); ++g) {
    off.push_back(unknowns);
    blocks.push_back(n->nodes(m->gen_degree(g) + e));
    unknowns += blocks.back().size();
  }
  if (!unknowns) return {};
  std::vector<Vec> rows;
  for (const auto& r : m->relations()) {
    int rd = m->homogeneous_degree(r) + e;
    std::size_t h = n->dim(rd);
    if (!h) continue;
    std::vector<Vec> cols(unknowns, Vec(h, 0));
    for (const auto& [t, c] : r.terms()) {
      for (std::size_t j = 0; j < blocks[t.gen].size(); ++j) {
        const Term& node = blocks[t.gen][j];
        Vec v = n->coords(Elem::term(f, node.gen, node.mono).times(t.mono), rd);
        Vec& col = cols[off[t.gen] + j];
        for (std::size_t i = 0; i < h; ++i) col[i] = f.add(col[i], f.mul(c, v[i]));
      }
    }
    for (std::size_t i = 0; i < h; ++i) {
      Vec row(unknowns);
      for (std::size_t j = 0; j < unknowns; ++j) row[j] = cols[j][i];
      rows.push_back(std::move(row));
    }
  }
  Mat a(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) a.at(i, j) = rows[i][j];
  std::vector<Vec> ker;
  if (rows.empty()) {
    for (std::size_t j = 0; j < unknowns; ++j) {
      Vec v(unknowns, 0);
      v[j] = 1;
      ker.push_back(std::move(v));
    }
  } else {
    ker = kernel(f, a);
  }
  std::vector<Morphism> out;
  for (const auto& v : ker) {
    std::vector<Elem> img;
    for (unsigned g = 0; g < m->num_gens(); ++g) {
      Elem x(f);
      for (std::size_t j = 0; j < blocks[g].size(); ++j)
        if (v[off[g] + j]) x.add_term(blocks[g][j], v[off[g] + j]);
      img.push_back(std::move(x));
    }
    out.emplace_back(m, n, std::move(img));
  }
  return out;
}

HomWindow hom_window(const ModulePtr& m, const ModulePtr& n, int t) {
  HomWindow w{m, n, t, {}, {}, {}, false, {}};
  const int lo = hom_min_degree(*m, *n);
  std::size_t total = 0;
  std::vector<std::size_t> totals;
  for (int e = lo; e <= lo + t + 2; ++e) {
    auto b = hom_degree(m, n, e);
    total += b.size();
    if (e <= lo + t) {
      w.degrees.push_back(e);
      w.dims.push_back(b.size());
      for (auto& x : b) w.basis.push_back(std::move(x));
    }
    if (e >= lo + t) totals.push_back(total);
  }
  w.certificate.t0 = t;
  for (auto tot : totals) w.certificate.answers.push_back(tot == 0 ? "zero" : "nonzero");
  w.stable = std::all_of(totals.begin(), totals.end(), [&](std::size_t v) { return (v == 0) == (totals[0] == 0); });
  return w;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "indeterminate";
  }
}

namespace {

// Solve f_e(pm) = target over the basis of Hom_e; returns the combination.
std::optional<Morphism> solve_pointed(const std::vector<Morphism>& basis, const ModulePtr& m, const ModulePtr& n,
                                      const Elem& pm, const Elem& target, int b) {
  const PrimeField& f = m->field();
  Vec rhs = n->coords(target, b);
  if (basis.empty()) {
    if (is_zero_vec(rhs)) return Morphism::zero(m, n);
    return std::nullopt;
  }
  std::vector<Vec> cols;
  for (const auto& h : basis) cols.push_back(n->coords(apply_images(m, h.images(), pm), b));
  auto sol = solve(f, Mat::from_columns(rhs.size(), cols), rhs);
  if (!sol) return std::nullopt;
  Morphism out = Morphism::zero(m, n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((*sol)[i]) out = out + basis[i].scaled((*sol)[i]);
  return out;
}

template <class BasisFn>
PointedResult pointed_impl(const ModulePtr& m, const Elem& pm, const ModulePtr& n, const Elem& pn, int t,
                           BasisFn&& basis_for) {
  PointedResult res;
  res.certificate.t0 = t;
  Elem target = n->normal_form(pn);
  auto answer_all = [&](Verdict v) {
    for (int i = 0; i < 3; ++i) res.certificate.answers.push_back(to_string(v));
    res.verdict = v;
  };
  if (target.is_zero()) {
    res.witness = Morphism::zero(m, n);
    answer_all(Verdict::Yes);
    return res;
  }
  if (m->is_zero(pm)) {
    answer_all(Verdict::No);
    return res;
  }
  const int a = m->homogeneous_degree(pm);
  const int lo = hom_min_degree(*m, *n);
  Morphism witness = Morphism::zero(m, n);
  int need = 0;
  bool possible = true;
  for (int b : n->degrees(target)) {
    int e = b - a;
    if (e < lo) {
      possible = false;
      continue;
    }
    need = std::max(need, e - lo);
    auto w = solve_pointed(basis_for(e), m, n, pm, n->component(target, b), b);
    if (!w) possible = false; else witness = witness + *w;
  }
  // Degrees are solved exactly; a window below the needed image depth cannot
  // see the relevant Hom degree and reports indeterminate.
  for (int dt = 0; dt < 3; ++dt) {
    Verdict v = t + dt < need ? Verdict::Indeterminate : (possible ? Verdict::Yes : Verdict::No);
    res.certificate.answers.push_back(to_string(v));
  }
  res.verdict = t < need ? Verdict::Indeterminate : (possible ? Verdict::Yes : Verdict::No);
  if (res.verdict == Verdict::Yes) res.witness = witness;
  res.certificate.t0 = std::min(t, need);
  return res;
}

}  // namespace

PointedResult pointed_exists(const ModulePtr& m, const Elem& pm, const ModulePtr& n, const Elem& pn, int t) {
  return pointed_impl(m, pm, n, pn, t, [&](int e) { return hom_degree(m, n, e); });
}

const std::vector<Morphism>& HomCache::get(const ModulePtr& m, const ModulePtr& n, int e) {
  auto key = std::make_tuple(m.get(), n.get(), e);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  keep_.push_back(m);
  keep_.push_back(n);
  return cache_.emplace(key, hom_degree(m, n, e)).first->second;
}

bool HomCache::pointed(const ModulePtr& m, const Elem& pm, const ModulePtr& n, const Elem& pn) {
  auto r = pointed_impl(m, pm, n, pn, 1 << 20, [&](int e) -> const std::vector<Morphism>& { return get(m, n, e); });
  return r.verdict == Verdict::Yes;
}

// ----------------------------------------------------------------- duality

ModulePtr hom_to_ring(const ModulePtr& m, int window) {
  const PrimeField& f = m->field();
  ModulePtr s = make(f, {Family::S});
  std::vector<int> degs;
  std::vector<std::string> names;
  for (unsigned g = 0; g < m->num_gens(); ++g) {
    degs.push_back(-m->gen_degree(g));
    names.push_back("h_" + m->gen_names()[g]);
  }
  ThreadModule::Spec sp;
  sp.name = "Hom(" + m->name() + ",S)";
  sp.gen_names = names;
  sp.gen_degrees = degs;
  ModulePtr amb = ThreadModule::make(f, std::move(sp));
  const int lo = hom_min_degree(*m, *s);
  std::vector<Elem> gens, prev;
  for (int e = lo; e <= lo + window; ++e) {
    std::vector<Elem> cur;
    for (const auto& h : hom_degree(m, s, e)) {
      Elem v(f);
      for (unsigned g = 0; g < m->num_gens(); ++g)
        for (const auto& [t, c] : h.images()[g].terms()) v.add_term({g, t.mono}, c);
      cur.push_back(v);
    }
    Subspace known(amb->dim(e));
    for (const auto& p : prev)
      for (Monomial mu : {Monomial{1, 0}, Monomial{0, 1}}) known.add(f, amb->coords(p.times(mu), e));
    for (const auto& v : cur)
      if (known.add(f, amb->coords(v, e))) gens.push_back(v);
    prev = std::move(cur);
  }
  std::vector<std::string> gnames;
  for (std::size_t i = 0; i < gens.size(); ++i) gnames.push_back("h" + std::to_string(i));
  int top = lo + window + 4;
  return present_submodule(amb, gens, gnames, top, "Hom(" + m->name() + ",S)").module;
}

std::optional<Morphism> find_isomorphism(const ModulePtr& a, const ModulePtr& b, int s, int window,
                                         std::uint64_t seed, int trials) {
  const PrimeField& f = a->field();
  auto basis = hom_degree(a, b, s);
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Morphism h = Morphism::zero(a, b);
    for (const auto& x : basis) h = h + x.scaled(static_cast<Coeff>(rng() % f.prime()));
    bool ok = true;
    for (int d = a->min_gen_degree(); d < a->min_gen_degree() + window && ok; ++d) {
      std::size_t da = a->dim(d), db = b->dim(d + s);
      ok = da == db && rank(f, h.matrix(d, s)) == da;
    }
    if (ok) return h;
  }
  return std::nullopt;
}

namespace {

std::vector<std::size_t> hilbert_from_min(const ModulePtr& m, int len) {
  std::vector<std::size_t> h;
  for (int d = m->min_gen_degree(); d < m->min_gen_degree() + len; ++d) h.push_back(m->dim(d));
  return h;
}

}  // namespace

DualResult dual(PrimeField f, FamilyId id, unsigned seed) {
  DualResult r;
  r.input = id;
  ModulePtr m = make(f, id);
  const int window = static_cast<int>(relation_depth(*m)) + 8;
  r.dual_module = hom_to_ring(m, window);
  const int len = window + 4;
  r.hilbert = hilbert_from_min(r.dual_module, len);
  for (const auto& cand : catalog_ids(id.k + 2)) {
    ModulePtr c = make(f, cand);
    if (hilbert_from_min(c, len) != r.hilbert) continue;
    int s = c->min_gen_degree() - r.dual_module->min_gen_degree();
    if (find_isomorphism(r.dual_module, c, s, len, seed)) {
      r.match = cand;
      r.shift = s;
      r.iso_verified = true;
      break;
    }
  }
  return r;
}

// -------------------------------------------------------- indecomposability

namespace {

Mat inverse(const PrimeField& f, const Mat& a) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < a.rows(); ++j) {
    Vec e(a.rows(), 0);
    e[j] = 1;
    auto x = solve(f, a, e);
    if (!x) throw AlgebraError("singular matrix");
    cols.push_back(*x);
  }
  return Mat::from_columns(a.rows(), cols);
}

Mat matpow(const PrimeField& f, Mat a, std::size_t e) {
  Mat r = Mat::identity(a.rows());
  while (e) {
    if (e & 1) r = r.mul(f, a);
    a = a.mul(f, a);
    e >>= 1;
  }
  return r;
}

// Column space basis.
std::vector<Vec> image_basis(const PrimeField& f, const Mat& a) {
  Subspace s(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) s.add(f, a.col(j));
  return s.basis();
}

}  // namespace

IndecomposabilityVerdict is_indecomposable(const ModulePtr& m, int T, std::size_t trials, std::uint64_t seed) {
  const PrimeField& f = m->field();
  IndecomposabilityVerdict v;
  v.seed = seed;
  v.depth = T;
  const int lo = m->min_gen_degree(), hi = m->max_gen_degree() + T - 1;
  // V_d = M_d / (m^T M)_d with coordinates on the non-pivots of (m^T M)_d.
  std::map<int, Subspace> deep;
  std::map<int, std::vector<std::size_t>> keep;
  std::map<int, std::size_t> offset;
  std::size_t dimv = 0;
  for (int d = lo; d <= hi; ++d) {
    Subspace w(m->dim(d));
    for (unsigned g = 0; g < m->num_gens(); ++g) {
      int e = d - m->gen_degree(g);
      if (e < T) continue;
      for (const auto& mu : monomials_of_degree(static_cast<unsigned>(e))) w.add(f, m->coords(Elem::term(f, g, mu), d));
    }
    std::vector<bool> piv(w.ambient(), false);
    for (auto p : w.pivots()) piv[p] = true;
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < w.ambient(); ++i)
      if (!piv[i]) k.push_back(i);
    offset[d] = dimv;
    dimv += k.size();
    deep[d] = std::move(w);
    keep[d] = std::move(k);
  }
  v.quotient_dim = dimv;
  std::vector<Mat> basis;
  for (int e = lo - m->max_gen_degree(); e <= hi - lo; ++e) {
    for (const auto& h : hom_degree(m, m, e)) {
      Mat a(dimv, dimv);
      for (int d = lo; d <= hi; ++d) {
        int to = d + e;
        if (to < lo || to > hi || keep[d].empty() || keep[to].empty()) continue;
        Mat blk = h.matrix(d, e);
        for (std::size_t j = 0; j < keep[d].size(); ++j) {
          Vec u(m->dim(d), 0);
          u[keep[d][j]] = 1;
          Vec img = deep[to].reduce(f, blk.apply(f, u));
          for (std::size_t i = 0; i < keep[to].size(); ++i) a.at(offset[to] + i, offset[d] + j) = img[keep[to][i]];
        }
      }
      basis.push_back(std::move(a));
    }
  }
  v.end_dim = basis.size();
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++v.trials;
    Mat F(dimv, dimv);
    for (const auto& b : basis) {
      Coeff c = static_cast<Coeff>(rng() % f.prime());
      if (!c) continue;
      for (std::size_t i = 0; i < dimv; ++i)
        for (std::size_t j = 0; j < dimv; ++j)
          if (b.at(i, j)) F.at(i, j) = f.add(F.at(i, j), f.mul(c, b.at(i, j)));
    }
    Mat P = matpow(f, F, dimv);
    std::size_t r = rank(f, P);
    if (r == 0 || r == dimv) continue;
    auto im = image_basis(f, P);
    auto ker = kernel(f, P);
    std::vector<Vec> cols = im;
    cols.insert(cols.end(), ker.begin(), ker.end());
    Mat B = Mat::from_columns(dimv, cols);
    Mat D(dimv, dimv);
    for (std::size_t i = 0; i < im.size(); ++i) D.at(i, i) = 1;
    v.idempotent = B.mul(f, D).mul(f, inverse(f, B));
    v.idempotent_rank = im.size();
    v.decomposed = true;
    v.summary = "decomposed: Fitting idempotent of rank " + std::to_string(r) + " on dim " + std::to_string(dimv);
    return v;
  }
  v.summary = "no nontrivial idempotent found in " + std::to_string(trials) + " trials";
  return v;
}

// ------------------------------------------------------------ endo chain

EndoChainReport endo_chain_check(PrimeField f, unsigned k, int t) {
  EndoChainReport rep;
  rep.k = k;
  rep.window = t;
  ModulePtr n = make(f, {Family::N, k});
  auto defined = [&](const std::vector<std::string>& img) {
    try {
      Morphism::parse(n, n, img);
      return true;
    } catch (const AlgebraError&) {
      return false;
    }
  };
  rep.shift_map_ok = defined({"n", "0"});
  rep.y_map_ok = defined({"m*y - n", "m*x"});
  rep.yk_map_ok = defined({"m*y^" + std::to_string(k) + " - n", "m*x"});
  const int lo = n->min_gen_degree(), hi = lo + t;
  std::map<int, std::vector<Morphism>> ends;
  auto end_e = [&](int e) -> const std::vector<Morphism>& {
    auto it = ends.find(e);
    if (it == ends.end()) it = ends.emplace(e, hom_degree(n, n, e)).first;
    return it->second;
  };
  // Per-degree span of {h(w) : h in End} for a homogeneous w.
  auto orbit = [&](const Elem& w) {
    std::map<int, Subspace> out;
    int a = n->homogeneous_degree(w);
    for (int d = lo; d <= hi; ++d) {
      Subspace s(n->dim(d));
      int e = d - a;
      if (e >= hom_min_degree(*n, *n))
        for (const auto& h : end_e(e)) s.add(f, n->coords(h.apply(w), d));
      out.emplace(d, std::move(s));
    }
    return out;
  };
  std::vector<std::map<int, Subspace>> chain;
  for (unsigned j = 2; j <= 4; ++j) {
    if (static_cast<int>(k + j) > hi) break;
    chain.push_back(orbit(n->parse("m*x^" + std::to_string(j))));
    chain.push_back(orbit(n->parse("n*x^" + std::to_string(j))));
  }
  rep.chain_strict = chain.size() >= 2;
  for (const auto& c : chain) {
    std::size_t tot = 0;
    for (const auto& [d, s] : c) tot += s.dim();
    rep.chain_dims.push_back(tot);
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    bool contained = true, strict = false;
    for (int d = lo; d <= hi; ++d) {
      if (!chain[i].at(d).contains(f, chain[i + 1].at(d))) contained = false;
      if (chain[i].at(d).dim() > chain[i + 1].at(d).dim()) strict = true;
    }
    if (!contained || !strict) rep.chain_strict = false;
  }
  return rep;
}

}  // namespace dinf
