#include "dinf/catalog.hpp"

#include <algorithm>
#include <regex>

namespace dinf {

bool FamilyId::parameterized() const {
  return family == Family::M || family == Family::Y || family == Family::X || family == Family::N;
}

std::string family_letter(Family f) {
  static const char* names[] = {"S", "A", "B", "C", "D", "M", "Y", "X", "N"};
  return names[static_cast<int>(f)];
}

std::string to_string(const FamilyId& id) {
  std::string s = family_letter(id.family);
  if (id.parameterized()) s += "_" + std::to_string(id.k);
  return s;
}

FamilyId parse_family_id(const std::string& text) {
  static const std::regex re(R"(\s*([SABCDMYXN])(?:_?\(?(\d+)\)?)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw AlgebraError("unknown module '" + text + "'");
  static const std::string letters = "SABCDMYXN";
  FamilyId id{static_cast<Family>(letters.find(m[1].str()[0])), 0};
  if (m[2].matched) id.k = static_cast<unsigned>(std::stoul(m[2].str()));
  if (id.parameterized() && id.k == 0) throw AlgebraError("family " + family_letter(id.family) + " needs k >= 1");
  if (!id.parameterized() && m[2].matched) throw AlgebraError(family_letter(id.family) + " takes no parameter");
  return id;
}

std::vector<FamilyId> catalog_ids(unsigned k_max) {
  std::vector<FamilyId> out = {{Family::S}, {Family::A}, {Family::B}, {Family::C}, {Family::D}};
  for (Family f : {Family::M, Family::Y, Family::X, Family::N})
    for (unsigned k = 1; k <= k_max; ++k) out.push_back({f, k});
  return out;
}

namespace {

Elem gen(PrimeField f, unsigned g, unsigned a = 0, unsigned b = 0, Coeff c = 1) { return Elem::term(f, g, {a, b}, c); }

ModulePtr principal(PrimeField f, const std::string& name, const std::string& g, int deg, std::optional<Elem> rel,
                    SElem image) {
  ThreadModule::Spec sp;
  sp.name = name;
  sp.gen_names = {g};
  sp.gen_degrees = {deg};
  if (rel) sp.relations = {*rel};
  sp.display_image = image;
  return ThreadModule::make(f, std::move(sp));
}

ModulePtr two_gen(PrimeField f, const std::string& name, int dm, int dn, Elem r1, Elem r2) {
  ThreadModule::Spec sp;
  sp.name = name;
  sp.gen_names = {"m", "n"};
  sp.gen_degrees = {dm, dn};
  sp.relations = {std::move(r1), std::move(r2)};
  return ThreadModule::make(f, std::move(sp));
}

}  // namespace

ModulePtr make(PrimeField f, FamilyId id) {
  if (id.parameterized() && id.k == 0) throw AlgebraError("family " + family_letter(id.family) + " needs k >= 1");
  const std::string name = to_string(id);
  const int k = static_cast<int>(id.k);
  const Coeff m1 = f.neg(1);
  switch (id.family) {
    case Family::S: return principal(f, name, "s", 0, std::nullopt, SElem::one(f));
    case Family::A: return principal(f, name, "a", 2, gen(f, 0, 0, 1), nf("x^2", f));
    case Family::B: return principal(f, name, "b", 1, gen(f, 0, 2, 0), nf("y", f));
    case Family::C: return principal(f, name, "c", 2, gen(f, 0, 1, 0), nf("x*y", f));
    case Family::D: return principal(f, name, "d", 1, gen(f, 0, 1, 1), nf("x", f));
    case Family::M:
      return two_gen(f, name, k + 1, 2, gen(f, 0, 1, 0) + gen(f, 1, 0, id.k, m1), gen(f, 1, 1, 0));
    case Family::Y:
      return two_gen(f, name, k, 1, gen(f, 0, 1, 0) + gen(f, 1, 0, id.k, m1), gen(f, 1, 1, 1));
    case Family::X:
      return two_gen(f, name, k, 2, gen(f, 0, 1, 1) + gen(f, 1, 0, id.k, m1), gen(f, 1, 1, 0));
    case Family::N:
      return two_gen(f, name, k, 1, gen(f, 0, 1, 1) + gen(f, 1, 0, id.k + 1, m1), gen(f, 1, 1, 1));
  }
  throw AlgebraError("unreachable family");
}

Elem element_eval(const ThreadModule& m, const std::string& expr) { return m.normal_form(m.parse(expr)); }

unsigned relation_depth(const ThreadModule& m) {
  unsigned d = 0;
  for (const auto& r : m.relations())
    for (const auto& [t, c] : r.terms()) d = std::max(d, t.mono.degree());
  return d;
}

MatrixModule truncate_checked(const ThreadModule& m, unsigned t) {
  if (t < relation_depth(m) + 2)
    throw AlgebraError("truncation depth " + std::to_string(t) + " below relation depth + 2 for " + m.name());
  return m.truncate(t);
}

ModulePtr ring_module(PrimeField f) { return make(f, {Family::S}); }

ModulePtr ring_square(PrimeField f, int shift) {
  ThreadModule::Spec sp;
  sp.name = "S+S[" + std::to_string(shift) + "]";
  sp.gen_names = {"e1", "e2"};
  sp.gen_degrees = {0, shift};
  return ThreadModule::make(f, std::move(sp));
}

Elem apply_images(const ModulePtr& m, const std::vector<Elem>& images, const Elem& e) {
  if (images.size() != m->num_gens()) throw AlgebraError("image count does not match generators");
  Elem out(e.field());
  for (const auto& [t, c] : e.terms()) out = out + images[t.gen].times(t.mono).scaled(c);
  return out;
}

IsoCertificate certify_embedding(const ModulePtr& m, const ModulePtr& ambient, const std::vector<Elem>& images,
                                 int depth) {
  IsoCertificate cert;
  cert.depth = depth;
  const PrimeField& f = m->field();
  cert.relations_vanish = true;
  for (const auto& r : m->relations()) {
    if (!ambient->is_zero(apply_images(m, images, r))) {
      cert.relations_vanish = false;
      cert.failures.push_back("relation " + m->to_string(r, false) + " does not vanish");
    }
  }
  cert.injective = true;
  for (int d = m->min_gen_degree(); d <= depth; ++d) {
    auto nodes = m->nodes(d);
    Mat a(ambient->dim(d), nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      Vec c = ambient->coords(apply_images(m, images, Elem::term(f, nodes[j].gen, nodes[j].mono)), d);
      for (std::size_t i = 0; i < c.size(); ++i) a.at(i, j) = c[i];
    }
    if (rank(f, a) != nodes.size()) {
      cert.injective = false;
      cert.failures.push_back("not injective in degree " + std::to_string(d));
    }
  }
  auto pres = present_submodule(ambient, images, m->gen_names(), depth, m->name() + "'");
  cert.syzygies_hold = true;
  for (const auto& r : pres.module->relations()) {
    if (!m->is_zero(r)) {
      cert.syzygies_hold = false;
      cert.failures.push_back("syzygy " + pres.module->to_string(r, false) + " is not a relation");
    }
  }
  return cert;
}

namespace {

Realization finish(FamilyId id, ModulePtr m, ModulePtr amb, std::vector<Elem> images, int depth) {
  Realization r{id, m, amb, std::move(images), {}, {}};
  for (const auto& e : r.images) r.image_strings.push_back(amb->to_string(e, false));
  r.certificate = certify_embedding(m, amb, r.images, depth);
  return r;
}

}  // namespace

Realization realize(PrimeField f, FamilyId id, int depth) {
  ModulePtr m = make(f, id);
  ModulePtr s = ring_module(f);
  auto in_s = [&](const std::string& e) { return s->parse(e); };
  const std::string k = std::to_string(id.k);
  switch (id.family) {
    case Family::S: return finish(id, m, s, {in_s("1")}, depth);
    case Family::A: return finish(id, m, s, {in_s("x^2")}, depth);
    case Family::B: return finish(id, m, s, {in_s("y")}, depth);
    case Family::C: return finish(id, m, s, {in_s("x*y")}, depth);
    case Family::D: return finish(id, m, s, {in_s("x")}, depth);
    case Family::M: return finish(id, m, s, {in_s("y^" + std::to_string(id.k + 1)), in_s("x*y")}, depth);
    case Family::Y: return finish(id, m, s, {in_s("y^" + k), in_s("x")}, depth);
    case Family::X: {
      ModulePtr sq = ring_square(f, static_cast<int>(id.k) - 1);
      return finish(id, m, sq, {sq->parse("e1*y^" + k + " + e2*x"), sq->parse("e1*x*y")}, depth);
    }
    case Family::N: {
      ModulePtr sq = ring_square(f, static_cast<int>(id.k) - 1);
      return finish(id, m, sq, {sq->parse("e1*y^" + k + " + e2*x"), sq->parse("e1*x")}, depth);
    }
  }
  throw AlgebraError("unreachable family");
}

Realization realize_localized(PrimeField f, FamilyId id, int depth) {
  ModulePtr m = make(f, id);
  ModulePtr s = ring_module(f);
  const std::string k = std::to_string(id.k);
  switch (id.family) {
    case Family::X: return finish(id, m, s, {s->parse("(x+y)^" + k), s->parse("x*y")}, depth);
    case Family::M: return finish(id, m, s, {s->parse("y*(x+y)^" + k), s->parse("x*y")}, depth);
    default: throw AlgebraError("no localized realization for " + to_string(id));
  }
}

std::string to_string(const PointModel& p) {
  switch (p.kind) {
    case PointKind::Catalog: return to_string(*p.id);
    case PointKind::Ntilde: return "N~";
    case PointKind::Rtilde: return "R~";
    case PointKind::QR: return "Q_R";
    case PointKind::Gx: return "G_x";
    case PointKind::Gy: return "G_y";
  }
  return "?";
}

PointModel parse_point(const std::string& text) {
  if (text == "N~" || text == "Ntilde") return {PointKind::Ntilde, std::nullopt};
  if (text == "R~" || text == "Rtilde") return {PointKind::Rtilde, std::nullopt};
  if (text == "Q_R" || text == "QR") return {PointKind::QR, std::nullopt};
  if (text == "G_x" || text == "Gx") return {PointKind::Gx, std::nullopt};
  if (text == "G_y" || text == "Gy") return {PointKind::Gy, std::nullopt};
  return {PointKind::Catalog, parse_family_id(text)};
}

std::vector<PointModel> limit_points() {
  return {{PointKind::Ntilde, std::nullopt},
          {PointKind::Rtilde, std::nullopt},
          {PointKind::QR, std::nullopt},
          {PointKind::Gx, std::nullopt},
          {PointKind::Gy, std::nullopt}};
}

StageModel limit_stage(PrimeField f, PointModel p, unsigned K) {
  if (K == 0) throw AlgebraError("stages start at 1");
  StageModel st{p, K, nullptr, Elem(f), nullptr, {}, 1};
  auto principal_ray = [&](Family fam, Monomial step) {
    st.module = make(f, {fam});
    st.next = st.module;
    Monomial pw{step.a * K, step.b * K};
    st.designated = Elem::term(f, 0, pw);
    st.ray_images = {Elem::term(f, 0, step)};
  };
  switch (p.kind) {
    case PointKind::Catalog: throw AlgebraError("catalog points have no stages");
    case PointKind::Ntilde:
    case PointKind::Rtilde: {
      Family fam = p.kind == PointKind::Ntilde ? Family::X : Family::M;
      st.module = make(f, {fam, K});
      st.next = make(f, {fam, K + 1});
      st.designated = Elem::term(f, 0);
      st.ray_images = {Elem::term(f, 0), Elem::term(f, 1, {0, 1})};
      break;
    }
    case PointKind::Gx: principal_ray(Family::A, {1, 0}); break;
    case PointKind::Gy: principal_ray(Family::C, {0, 1}); break;
    case PointKind::QR: principal_ray(Family::B, {0, 1}); break;
  }
  return st;
}

nlohmann::json catalog_json(PrimeField f, FamilyId id, int window) {
  ModulePtr m = make(f, id);
  nlohmann::json j = m->to_json(window);
  j["family"] = family_letter(id.family);
  if (id.parameterized()) j["k"] = id.k;
  j["generators"] = m->gen_names();
  nlohmann::json degs = nlohmann::json::array();
  for (int d : m->gen_degrees()) degs.push_back(d);
  j["generator_degrees"] = degs;
  return j;
}

}  // namespace dinf
