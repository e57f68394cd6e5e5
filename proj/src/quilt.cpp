#include "dinf/quilt.hpp"

#include <algorithm>
#include <sstream>

namespace dinf {

bool QuiltGraph::has_node(const std::string& name) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const QuiltNode& n) { return n.name == name; });
}

bool QuiltGraph::has_edge(const std::string& from, const std::string& to) const {
  return std::any_of(edges.begin(), edges.end(), [&](const QuiltEdge& e) { return e.from == from && e.to == to; });
}

std::vector<QuiltEdge> QuiltGraph::in_edges(const std::string& name) const {
  std::vector<QuiltEdge> out;
  for (const auto& e : edges)
    if (e.to == name) out.push_back(e);
  return out;
}

std::vector<QuiltEdge> QuiltGraph::finite_edges() const {
  std::vector<QuiltEdge> out;
  for (const auto& e : edges)
    if (!e.limit) out.push_back(e);
  return out;
}

namespace {

QuiltNode place(const FamilyId& id) {
  int k = static_cast<int>(id.k);
  switch (id.family) {
    case Family::S: return {"S", false, 0, 2};
    case Family::A: return {"A", false, 0, 0};
    case Family::B: return {"B", false, 0, 4};
    case Family::C: return {"C", false, 2, 7};
    case Family::D: return {"D", false, 3, 7};
    case Family::Y: return {to_string(id), false, 2 * k - 1, 0};
    case Family::M: return {to_string(id), false, 2 * k, 1};
    case Family::X: return {to_string(id), false, 2 * k - 1, 2};
    case Family::N: return {to_string(id), false, 2 * k, 3};
  }
  return {to_string(id), false, 0, 0};
}

}  // namespace

QuiltGraph build_quilt(PrimeField f, unsigned k_max) {
  if (k_max < 2) throw AlgebraError("the quilt needs k_max >= 2");
  QuiltGraph q;
  q.k_max = k_max;
  for (const auto& id : catalog_ids(k_max)) q.nodes.push_back(place(id));
  const int end = 2 * static_cast<int>(k_max) + 2;
  q.nodes.push_back({"R~", true, end, 1});
  q.nodes.push_back({"N~", true, end, 3});
  q.nodes.push_back({"Q_R", true, end + 2, 2});
  q.nodes.push_back({"G_y", true, end + 2, 7});
  q.nodes.push_back({"G_x", true, end / 2, 9});

  for (const auto& e : quiver_edges(f, k_max))
    q.edges.push_back({to_string(e.source), to_string(e.target), "e" + std::to_string(e.id), false, false});

  const std::string K = std::to_string(k_max);
  auto limit = [&](std::string a, std::string b, std::string label, bool rec = false) {
    q.edges.push_back({std::move(a), std::move(b), std::move(label), true, rec});
  };
  limit("M_" + K, "R~", "ray");
  limit("N_" + K, "N~", "ray");
  limit("R~", "N~", "incl");
  limit("N~", "R~", "y");
  limit("R~", "C", "x");
  limit("N~", "D", "x");
  limit("D", "G_y", "ray");
  limit("G_y", "R~", "coray");
  limit("N~", "Q_R", "ray");
  for (const char* src : {"R~", "N~", "Q_R", "G_y"}) limit(src, "G_x", "ray", true);

  q.glide.push_back({"R~", "C", "x"});
  q.glide.push_back({"N~", "D", "x"});
  q.notes.push_back("strip coordinates and the edges into G_x are reconstructed: there is no reference drawing");
  q.notes.push_back("entering the second component at D after N is a choice; another entry point gives a different loop");
  return q;
}

nlohmann::json quilt_json(const QuiltGraph& q) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array(), glide = nlohmann::json::array();
  for (const auto& n : q.nodes)
    nodes.push_back({{"name", n.name}, {"boundary", n.boundary}, {"col", n.col}, {"row", n.row}});
  for (const auto& e : q.edges)
    edges.push_back(
        {{"from", e.from}, {"to", e.to}, {"label", e.label}, {"limit", e.limit}, {"reconstructed", e.reconstructed}});
  for (const auto& g : q.glide) glide.push_back({{"a", g.a}, {"b", g.b}, {"via", g.via}});
  return {{"k_max", q.k_max}, {"nodes", nodes}, {"edges", edges}, {"glide", glide}, {"notes", q.notes}};
}

std::string quilt_dot(const QuiltGraph& q) {
  std::ostringstream os;
  os << "digraph quilt {\n  layout=neato;\n  node [shape=circle];\n";
  for (const auto& n : q.nodes) {
    os << "  \"" << n.name << "\" [pos=\"" << n.col << "," << n.row << "!\"";
    if (n.boundary) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const auto& e : q.edges) {
    os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.label << "\"";
    if (e.limit) os << ", color=blue";
    if (e.reconstructed) os << ", style=dotted";
    os << "];\n";
  }
  for (const auto& g : q.glide)
    os << "  \"" << g.a << "\" -> \"" << g.b << "\" [style=dashed, dir=both, constraint=false, label=\"glide " << g.via
       << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace {

bool same_on_window(const Morphism& a, const Morphism& b, int t) {
  if (!a.equals(b)) return false;
  auto e = a.degree();
  if (!e) return true;
  int lo = a.source()->min_gen_degree();
  for (int d = lo; d <= lo + t; ++d)
    if (!(a.matrix(d, *e) == b.matrix(d, *e))) return false;
  return true;
}

}  // namespace

SquareReport verify_squares(PrimeField f, unsigned K, int t) {
  if (K == 0) throw AlgebraError("stages start at 1");
  SquareReport r;
  r.K = K;
  ModulePtr c = make(f, {Family::C}), d = make(f, {Family::D});
  ModulePtr rt = make(f, {Family::M, K}), nn = make(f, {Family::X, K}), nn1 = make(f, {Family::X, K + 1});
  Morphism incl = Morphism::parse(rt, nn, {"m*y", "n"}, "R~ in N");
  Morphism rx = Morphism::parse(rt, c, {"x*y", "0"}, "R~ -x-> C");
  Morphism nx = Morphism::parse(nn, d, {"x", "0"}, "N -x-> D");
  Morphism cd = Morphism::parse(c, d, {"x*y"}, "C in D");
  Morphism ny = Morphism::parse(nn1, rt, {"m", "n"}, "N -y-> R~");
  Morphism nx1 = Morphism::parse(nn1, d, {"x", "0"}, "N -x-> D");
  Morphism dy = Morphism::parse(d, c, {"x*y"}, "D -y-> C");
  r.nonzero = true;
  for (const Morphism* m : {&incl, &rx, &nx, &cd, &ny, &nx1, &dy})
    if (m->is_zero()) {
      r.nonzero = false;
      r.details.push_back(m->label() + " is zero");
    }
  Morphism top = compose(incl, nx), bottom = compose(rx, cd);
  r.first = same_on_window(top, bottom, t);
  r.details.push_back("first: m -> " + d->to_string(top.images()[0]) + " / " + d->to_string(bottom.images()[0]));
  Morphism top2 = compose(ny, rx), bottom2 = compose(nx1, dy);
  r.second = same_on_window(top2, bottom2, t);
  r.details.push_back("second: m -> " + c->to_string(top2.images()[0]) + " / " + c->to_string(bottom2.images()[0]));
  return r;
}

Revolution revolution(PrimeField f, unsigned K) {
  if (K == 0) throw AlgebraError("stages start at 1");
  Revolution r{K, {}, {}, Morphism::identity(make(f, {Family::S})), "", {}};
  r.steps.push_back(edge(f, 12).morphism);
  for (unsigned k = 1; k < K; ++k) {
    r.steps.push_back(edge(f, 5, k).morphism);
    r.steps.push_back(edge(f, 8, k).morphism);
  }
  ModulePtr d = make(f, {Family::D});
  r.steps.push_back(Morphism::parse(make(f, {Family::X, K}), d, {"x", "0"}, "N -x-> D"));
  r.steps.push_back(Morphism::parse(d, make(f, {Family::Y, K}), {"n"}, "D in Y_K"));
  for (unsigned k = K; k >= 2; --k) {
    r.steps.push_back(edge(f, 2, k).morphism);
    r.steps.push_back(edge(f, 7, k - 1).morphism);
  }
  r.steps.push_back(edge(f, 13).morphism);
  r.path.push_back(r.steps.front().source()->name());
  for (const auto& s : r.steps) {
    r.path.push_back(s.target()->name());
    r.map = compose(r.map, s);
  }
  r.image_of_one = r.map.target()->to_string(r.map.images()[0]);
  r.notes.push_back("the loop leaves the first component at stage " + std::to_string(K) +
                    " and enters the second at D; D is one possible entry point");
  return r;
}

}  // namespace dinf
