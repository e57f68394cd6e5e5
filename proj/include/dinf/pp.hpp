#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/hom.hpp"

namespace dinf {

/// A CM-formula given by a free realization: a module with a homogeneous
/// point. The zero point is the bottom formula v = 0.
struct PointedModule {
  ModulePtr module;
  Elem point;
  std::string label;

  bool is_bottom() const { return module->is_zero(point); }
  int degree() const { return module->homogeneous_degree(point); }
};

PointedModule make_pointed(ModulePtr m, const Elem& point, std::string label = "");
PointedModule make_pointed(ModulePtr m, const std::string& point);
PointedModule make_pointed(PrimeField f, FamilyId id, const std::string& point);
/// "(X_1, m*x^2)"; also "0" for the bottom formula.
PointedModule parse_pointed(PrimeField f, const std::string& text);
PointedModule bottom(PrimeField f);

/// Sum of formulas: the point (a, b) in A + B, with B shifted so the point is
/// homogeneous.
PointedModule psum(const PointedModule& a, const PointedModule& b);
/// Conjunction: pushout of (S, 1) -> a and (S, 1) -> b, then socle reduction.
PointedModule pconj(const PointedModule& a, const PointedModule& b);

/// Implication oracle. a <= b when there is a pointed map (b) -> (a). Image
/// spaces {f(point) : f in Hom_e} are cached per source point, target and
/// target degree.
class PointedOracle {
 public:
  const Subspace& image(const PointedModule& src, const ModulePtr& tgt, int d);
  bool leq(const PointedModule& a, const PointedModule& b);
  bool equivalent(const PointedModule& a, const PointedModule& b) { return leq(a, b) && leq(b, a); }
  /// Is a below the sum of the given formulas? Computed from summed images.
  bool leq_sum(const PointedModule& a, const std::vector<const PointedModule*>& summands);
  std::size_t cached() const { return images_.size(); }

 private:
  using Key = std::tuple<const ThreadModule*, std::string, const ThreadModule*, int>;
  std::map<Key, Subspace> images_;
  HomCache homs_;
  std::vector<ModulePtr> keep_;
};

/// Bitmask of the monomials x^i y^j (i <= 2, j <= 6) killing the point.
std::uint32_t annihilator_signature(const PointedModule& p);

struct PatternNode {
  PointedModule pm;
  std::optional<FamilyId> id;  // empty for the bottom node
  std::size_t members = 0;     // candidates in the class
};

/// Pattern window: classes of pointed catalog modules (parameters <= k_max,
/// point degree at most t above the seed) reached by pointed maps from the
/// seed, ordered by implication.
struct PatternPoset {
  PointedModule seed;
  unsigned k_max = 0;
  int t = 0;
  std::vector<PatternNode> nodes;
  std::vector<std::vector<char>> leq;  // leq[i][j]: node i <= node j
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (upper, lower)
  std::size_t top = 0, bottom = 0;
  std::size_t candidates = 0;

  std::optional<std::size_t> find(const std::string& label) const;
  bool less(std::size_t i, std::size_t j) const { return leq[i][j] && !leq[j][i]; }
  std::vector<std::size_t> down_set(std::size_t i) const;
};

/// Pointed catalog modules of the window before classes are formed.
std::vector<std::pair<FamilyId, PointedModule>> pattern_candidates(const PointedModule& seed, unsigned k_max, int t,
                                                                   PointedOracle& oracle, std::size_t cap = 1000000);
PatternPoset pattern(const PointedModule& seed, unsigned k_max, int t, PointedOracle& oracle,
                     std::size_t cap = 1000000);

/// Down-set of an arbitrary formula among the pattern nodes.
std::vector<char> down_set(const PatternPoset& p, PointedOracle& oracle, const PointedModule& phi);

/// Lattice window generated by the pattern nodes. Sums and conjunctions are
/// computed with psum and pconj and compared with unions and intersections of
/// down-sets.
struct IntervalWindow {
  std::size_t nodes = 0;
  std::size_t antichain_pairs = 0;
  std::size_t sum_checks = 0;
  bool sum_trivial = true;
  std::size_t meet_checks = 0;
  bool meets_are_intersections = true;
  std::size_t triples = 0;
  bool distributive = true;
  bool join_irreducible = true;
  std::vector<std::string> failures;
  bool ok() const { return sum_trivial && meets_are_intersections && distributive && join_irreducible; }
};

IntervalWindow interval_window(const PatternPoset& p, PointedOracle& oracle, std::size_t meet_samples = 40,
                               std::size_t triple_samples = 20, std::uint64_t seed = 1);

/// Number of formulas in the window strictly between two nodes' down-sets
/// (down-sets of the difference), or nothing when the difference is too big.
std::optional<std::size_t> interval_inner_count(const PatternPoset& p, std::size_t lower, std::size_t upper);

nlohmann::json poset_json(const PatternPoset& p);
std::string poset_dot(const PatternPoset& p);

}  // namespace dinf
