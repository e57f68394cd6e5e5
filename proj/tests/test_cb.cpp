#include <random>

#include "doctest.h"
#include "dinf/cb.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

/// Derivative size from truncations: infinite blocks are cut to L points and
/// two block representatives are at finite distance when their distance does
/// not change from L to 2L.
std::size_t truncated_derivative_size(const ChainSpec& c) {
  auto positions = [&](std::size_t L) {
    std::vector<std::size_t> rep;
    std::size_t at = 0;
    for (const auto& b : c.blocks) {
      std::size_t len = b.kind == BlockKind::Fin ? b.n : L;
      std::size_t mid = 0;
      switch (b.kind) {
        case BlockKind::Fin: mid = 0; break;
        case BlockKind::Omega: mid = 0; break;
        case BlockKind::OmegaStar: mid = len - 1; break;
        case BlockKind::Z: mid = len / 2; break;
      }
      rep.push_back(at + mid);
      at += len;
    }
    return rep;
  };
  auto a = positions(50), b = positions(100);
  std::size_t classes = c.blocks.empty() ? 0 : 1;
  for (std::size_t i = 1; i < c.blocks.size(); ++i)
    if (a[i] - a[i - 1] != b[i] - b[i - 1]) ++classes;
  return classes;
}

ChainSpec random_chain(std::mt19937_64& rng) {
  ChainSpec c;
  std::size_t n = 1 + rng() % 5;
  for (std::size_t i = 0; i < n; ++i) {
    ChainBlock b;
    b.kind = static_cast<BlockKind>(rng() % 4);
    if (b.kind == BlockKind::Fin) b.n = 1 + static_cast<unsigned>(rng() % 3);
    c.blocks.push_back(b);
  }
  return c;
}

}  // namespace

TEST_CASE("chain derivatives of the two intervals") {
  CHECK(chain_derivative(parse_chain("1 + w*")) == ChainSpec::fin(2));
  CHECK(chain_derivative(parse_chain("1 + Z + w*")) == ChainSpec::fin(3));
  CHECK(mdim(parse_chain("1 + w*")) == 1);
  CHECK(mdim(parse_chain("1 + Z + w*")) == 1);
  CHECK(mdim(parse_chain("1 + w*")) + mdim(parse_chain("1 + Z + w*")) == 2);
  CHECK(mdim(ChainSpec::fin(7)) == 0);
  CHECK(chain_derivative(parse_chain("w* + w")) == ChainSpec::fin(1));
  CHECK(chain_derivative(parse_chain("w + w*")) == ChainSpec::fin(2));
  CHECK(chain_derivative(parse_chain("Z + Z")) == ChainSpec::fin(2));
  CHECK(parse_chain("1 + ℤ + ω*") == parse_chain("1 + Z + omega*"));
  CHECK(parse_chain("2 + 3") == ChainSpec::fin(5));
  CHECK(derivative_blocks(parse_chain("1 + Z + w*")) == std::vector<std::size_t>{0, 1, 2});
  CHECK(derivative_blocks(parse_chain("1 + w + w*")) == std::vector<std::size_t>{0, 0, 1});
  CHECK_THROWS(parse_chain("1 + q"));
}

TEST_CASE("derivative agrees with truncations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = random_chain(rng);
    CAPTURE(c.to_string());
    auto d = chain_derivative(c);
    CHECK(d.is_finite());
    CHECK(d == ChainSpec::fin(static_cast<unsigned>(truncated_derivative_size(c))));
    CHECK(mdim(c) == (c.is_finite() ? 0u : truncated_derivative_size(c) > 1 ? 1u : 0u));
    auto j = to_json(c);
    CHECK(chain_from_json(j) == c);
    CHECK(parse_chain(c.to_string()) == c);
  }
}

TEST_CASE("derivative is monotone under dropping blocks") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_chain(rng);
    ChainSpec sub;
    for (const auto& b : c.blocks)
      if (rng() % 2) sub.blocks.push_back(b);
    CAPTURE(c.to_string());
    CAPTURE(sub.to_string());
    auto size = [](const ChainSpec& s) { return s.normalized().blocks.empty() ? 0u : chain_derivative(s).blocks[0].n; };
    CHECK(size(sub) <= size(c));
  }
}

TEST_CASE("collapse of the x^2 | v interval") {
  PointedOracle o;
  auto s = collapse_study(parse_pointed(F5, "(S, x^2)"), CollapseParams::from_kmax(4), o);
  auto m = match_chain(s, parse_chain("1 + w*"), {{"0", 0}, {"(S, x^2)", 1}}, o);
  for (const auto& f : m.failures) MESSAGE(f);
  CHECK(m.ok());
  auto d3 = s.class_of(parse_pointed(F5, "(D, x^3)"), o), s3 = s.class_of(parse_pointed(F5, "(S, x^3)"), o);
  auto top = s.class_of(parse_pointed(F5, "(S, x^2)"), o);
  REQUIRE(d3);
  REQUIRE(s3);
  REQUIRE(top);
  CHECK(*d3 == *s3 + 1);
  CHECK(*top == *d3 + 1);
  CHECK(*top + 1 == s.small.classes.size());
  CHECK(s.class_of(parse_pointed(F5, "(X_1, m*x^2)"), o) == top);

  auto wrong = match_chain(s, parse_chain("1 + Z + w*"), {}, o);
  CHECK_FALSE(wrong.groups_match);
}

TEST_CASE("collapse of the vx = 0 interval") {
  PointedOracle o;
  auto s = collapse_study(parse_pointed(F5, "(C, x*y)"), CollapseParams::from_kmax(4), o);
  auto m = match_chain(s, parse_chain("1 + Z + w*"),
                       {{"0", 0}, {"(B, x*y)", 1}, {"(X_1, n)", 1}, {"(C, x*y)", 2}}, o);
  for (const auto& f : m.failures) MESSAGE(f);
  CHECK(m.ok());
  auto x1 = s.class_of(parse_pointed(F5, "(X_1, n)"), o), n1 = s.class_of(parse_pointed(F5, "(N_1, n*y)"), o);
  auto b = s.class_of(parse_pointed(F5, "(B, x*y)"), o), m1 = s.class_of(parse_pointed(F5, "(M_1, n)"), o);
  REQUIRE(x1);
  REQUIRE(b);
  REQUIRE(m1);
  CHECK(x1 == n1);
  CHECK(*x1 == *b + 1);
  CHECK(*m1 == *x1 + 1);
  CHECK_FALSE(s.class_of(parse_pointed(F5, "(M_1, m)"), o).has_value());

  auto wrong = match_chain(s, parse_chain("1 + w*"), {}, o);
  CHECK_FALSE(wrong.groups_match);
}

TEST_CASE("level zero pairs and controls") {
  PointedOracle o;
  CHECK(simple_at_zero(parse_pair(F5, "(S, x^2)", "(X_1, m*x^2)"), 3, 6, o));
  CHECK_FALSE(simple_at_zero(parse_pair(F5, "(S, x^2)", "(N_1, m*x^2)"), 3, 6, o));
  CHECK_FALSE(simple_at_zero(parse_pair(F5, "(S, x^2)", "(S, x^2)"), 3, 6, o));
  CHECK(simple_at_zero(parse_pair(F5, "(X_1, n)", "(B, x*y) + (N_1, n*y)"), 3, 6, o));
  CHECK_FALSE(simple_at_zero(parse_pair(F5, "(X_1, n)", "(N_1, n*y)"), 3, 6, o));
}

TEST_CASE("openness on catalog and limit points") {
  PointedOracle o;
  auto vx = parse_pair(F5, "(C, x*y)", "0");
  PointModel a{PointKind::Catalog, FamilyId{Family::A}}, c{PointKind::Catalog, FamilyId{Family::C}};
  PointModel gx{PointKind::Gx, std::nullopt}, nt{PointKind::Ntilde, std::nullopt};
  CHECK_FALSE(open_set_membership(F5, vx, a, 3, 8, o).open);
  CHECK(open_set_membership(F5, vx, c, 3, 8, o).open);
  CHECK_FALSE(open_set_membership(F5, vx, gx, 3, 8, o).open);
  auto r = open_set_membership(F5, parse_pair(F5, "(S, x^2)", "(D, x^3)"), nt, 3, 8, o);
  CHECK(r.open);
  CHECK(r.stable);
  CHECK_FALSE(open_set_membership(F5, parse_pair(F5, "(S, x^2)", "(D, x^3)"), a, 3, 8, o).open);
}

TEST_CASE("negative parts of the level one points") {
  PointedOracle o;
  auto s = pattern(parse_pointed(F5, "(S, x^2)"), 2, 3, o);
  PointModel nt{PointKind::Ntilde, std::nullopt};
  CHECK(neg_isolation_check(F5, s, o, {nt, "m*x^2", 5}, parse_pointed(F5, "(D, x^3)")));
  CHECK_FALSE(neg_isolation_check(F5, s, o, {nt, "m*x^2", 5}, parse_pointed(F5, "(S, x^3)")));
  CHECK_FALSE(neg_isolation_check(F5, s, o, {nt, "m*x^2", 5}, parse_pointed(F5, "(S, x^2)")));
}

TEST_CASE("cuts of the x^2 | v window") {
  PointedOracle o;
  auto seed = parse_pointed(F5, "(S, x^2)");
  auto w = pattern(seed, 2, 4, o), next = pattern(seed, 3, 6, o);
  auto cuts = classify_cuts(F5, w, next, o, default_cut_elements(2));
  REQUIRE(cuts.size() == w.nodes.size() - 1 + 5);
  for (const auto& c : cuts) {
    CAPTURE(c.generator);
    CHECK(c.accepted());
  }
  const auto* el = &cuts[w.nodes.size() - 1];
  CHECK(el[0].kind == CutKind::Principal);
  CHECK(el[0].generator == "(D, x^3)");
  for (int i = 1; i <= 3; ++i) {
    CHECK(el[i].kind == CutKind::Limit);
    CHECK(el[i].realized_by == "N~");
  }
  CHECK(el[4].kind == CutKind::Critical);
  CHECK(el[4].realized_by == "G_x");
}

TEST_CASE("CB table") {
  PointedOracle o;
  auto t = cb_table(F5, 2, 8, o);
  for (const auto& e : t.entries) {
    CAPTURE(to_string(e.point));
    CAPTURE(e.pair.to_string());
    CHECK(e.ok());
  }
  CHECK(t.first_match.ok());
  CHECK(t.second_match.ok());
  CHECK(t.closed_for_vx == std::vector<std::string>{"A", "G_x"});
  CHECK(t.ok());
  for (const char* p : {"S", "D", "C", "N~", "R~", "Q_R", "G_y", "G_x", "M_1", "N_2", "Y_1", "X_2", "A", "B"})
    CHECK(t.find(p) != nullptr);
  CHECK(t.find("C")->level == 1);
  CHECK(t.find("G_y")->level == 2);
  CHECK(t.find("R~")->pair.to_string() == "(M_1, n) / (X_1, n)");
  CHECK(t.find("N~")->neg_isolation == std::optional<bool>(true));
  auto j = to_json(t);
  CHECK(j["ok"] == true);
  CHECK(j["entries"].size() == t.entries.size());
  CHECK(to_markdown(t).find("| G_x |") != std::string::npos);
}
