#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/catalog.hpp"
#include "dinf/pp.hpp"

namespace dinf {

// ------------------------------------------------------------ chain calculus

enum class BlockKind { Fin, Omega, OmegaStar, Z };

struct ChainBlock {
  BlockKind kind = BlockKind::Fin;
  unsigned n = 1;  // only for Fin
  bool operator==(const ChainBlock&) const = default;
  bool has_min() const { return kind == BlockKind::Fin || kind == BlockKind::Omega; }
  bool has_max() const { return kind == BlockKind::Fin || kind == BlockKind::OmegaStar; }
};

/// Order type of a chain as a finite sum of blocks, read from the bottom.
struct ChainSpec {
  std::vector<ChainBlock> blocks;

  static ChainSpec fin(unsigned n);
  /// Merges adjacent Fin blocks and drops Fin(0).
  ChainSpec normalized() const;
  bool is_point() const;
  bool is_finite() const;
  std::string to_string() const;
  bool operator==(const ChainSpec& o) const { return normalized().blocks == o.normalized().blocks; }
};

/// "1 + Z + w*" style input; also accepts "omega", "omega*", "ω", "ω*", "ℤ".
ChainSpec parse_chain(const std::string& text);
nlohmann::json to_json(const ChainSpec& c);
ChainSpec chain_from_json(const nlohmann::json& j);

/// Quotient by finite distance: each block becomes one point, and two
/// neighbouring blocks fuse when the lower has a top and the upper a bottom.
ChainSpec chain_derivative(const ChainSpec& c);
/// Least n with the (n+1)-th derivative a single point.
unsigned mdim(const ChainSpec& c);
/// For each block, the index of the point of the derivative it collapses to.
std::vector<std::size_t> derivative_blocks(const ChainSpec& c);

// ------------------------------------------------------------ window collapse

struct CollapseClass {
  std::vector<std::size_t> members;  // node indices of the smaller window
  std::vector<std::string> labels;
  std::string label() const { return labels.front(); }
};

/// Collapse of a pattern window: nodes a, b are identified when the size of
/// D(a) xor D(b) is the same in the two larger windows (stably finite
/// length), and [a] <= [b] when D(a) minus D(b) is stably finite. Classes are
/// listed from the bottom.
struct CollapseResult {
  std::string seed;
  unsigned k_max = 0;
  int t = 0;
  std::vector<CollapseClass> classes;
  std::vector<std::size_t> class_of;  // node -> class
  std::vector<std::size_t> node_image;  // node -> node of the larger window
  bool chain = false;
  std::vector<std::string> failures;

  std::optional<std::size_t> class_of_label(const std::string& label) const;
  ChainSpec window_chain() const { return ChainSpec::fin(static_cast<unsigned>(classes.size())); }
  /// Number of classes strictly between two classes.
  std::size_t between(std::size_t a, std::size_t b) const { return a > b ? a - b - 1 : b > a ? b - a - 1 : 0; }
};

/// Collapse of the nodes of `w`, measured in `next` and `next2` (parameters
/// k_max + 1, t + 2 and k_max + 2, t + 4, same seed).
CollapseResult window_collapse(const PatternPoset& w, const PatternPoset& next, const PatternPoset& next2,
                               PointedOracle& oracle);

/// Node of `next` equivalent to node i of `w`.
std::optional<std::size_t> match_node(const PatternPoset& w, std::size_t i, const PatternPoset& next,
                                      PointedOracle& oracle);

/// Window sizes for a collapse study. Comparisons between a node with
/// parameter k and y-degree j settle only in windows with parameter about
/// k + j, so the collapsed cores are much smaller than the measuring windows.
struct CollapseParams {
  unsigned k_core = 2;
  int t_core = 3;
  unsigned k_measure = 8;
  int t_measure = 14;
  static CollapseParams from_kmax(unsigned k_max);
};

/// Two collapsed cores of increasing size measured in the same pair of
/// windows. Neighbouring classes of the small core lie in one point of the
/// next derivative when they stay neighbours in the large core.
struct CollapseStudy {
  std::string seed;
  CollapseParams params;
  CollapseResult small, large;
  std::vector<std::size_t> class_image;  // small class -> large class
  std::vector<std::size_t> group_of;     // small class -> point of the next derivative
  std::size_t groups = 0;

  /// Class of a formula in the small core, by equivalence with a node.
  std::optional<std::size_t> class_of(const PointedModule& phi, PointedOracle& oracle) const;
  std::vector<PatternPoset> windows;  // small core, large core, measure, measure next
};

CollapseStudy collapse_study(const PointedModule& seed, const CollapseParams& params, PointedOracle& oracle);

struct ChainAnchor {
  std::string formula;
  std::size_t block;  // block of the symbolic chain, from the bottom
};

/// Window evidence that a collapsed chain is a finite part of `symbolic`.
struct ChainMatch {
  ChainSpec symbolic;
  ChainSpec derivative;         // of the symbolic chain
  ChainSpec window_derivative;  // groups seen in the window
  bool chain = false;           // both cores collapse to chains
  bool bottom_alone = false;    // the bottom class is {0} in both cores
  bool grows = false;           // the large core has more classes
  bool groups_match = false;    // window groups agree with the derivative
  bool anchors_ok = false;      // anchored formulas sit in the derivative points of their blocks
  std::vector<std::string> failures;
  bool ok() const { return chain && bottom_alone && grows && groups_match && anchors_ok; }
};

ChainMatch match_chain(const CollapseStudy& s, const ChainSpec& symbolic, const std::vector<ChainAnchor>& anchors,
                       PointedOracle& oracle);

// ------------------------------------------------------------ points and cuts

/// A point with a chosen element: a catalog module, or a stage model of a
/// limit point (the element lives in stage `stage` and is carried by the ray).
struct PointElement {
  PointModel point;
  std::string element;  // in the catalog module, or in the stage module
  unsigned stage = 0;   // ignored for catalog points
  std::string to_string() const;
};

/// Node set of the window satisfied by the element, united over `extra`
/// further stages along the ray.
std::vector<char> satisfied_nodes(PrimeField f, const PatternPoset& w, PointedOracle& oracle, const PointElement& pe,
                                  unsigned extra = 2);

enum class CutKind { Principal, Limit, Critical };
std::string to_string(CutKind k);

struct Cut {
  std::string source;          // window seed
  std::vector<char> upper;     // filter part
  CutKind kind = CutKind::Principal;
  std::string generator;       // generating node (principal) or ray name
  std::string realized_by;     // point realizing the cut
  bool up_closed = false;
  bool meet_closed = false;
  bool cofilter = false;       // complement closed under sums
  bool accepted() const { return up_closed && meet_closed && cofilter; }
};

/// Principal cuts of every window node and the cuts of the given elements
/// (limit and critical ones recognised by comparing two windows).
std::vector<Cut> classify_cuts(PrimeField f, const PatternPoset& w, const PatternPoset& next, PointedOracle& oracle,
                               const std::vector<PointElement>& elements);

/// Elements used for the x^2 | v interval: N at x^k and G_x.
std::vector<PointElement> default_cut_elements(unsigned k_max);

// ------------------------------------------------------------ openness

struct Pair {
  PointedModule phi;
  PointedModule psi;
  std::string to_string() const { return phi.label + " / " + psi.label; }
};

Pair parse_pair(PrimeField f, const std::string& phi, const std::string& psi);

/// phi(M) not contained in psi(M). Catalog points are evaluated directly on
/// degrees up to `t` above the lowest generator. Limit points are evaluated on
/// stage K: an element of phi(M_K) lies in psi of the limit when its image
/// under the ray reaches psi at some later stage; `depth` stages are tried.
struct OpenReport {
  bool open = false;
  std::optional<int> witness_degree;
  bool stable = true;  // pullbacks at depth-1 and depth agree (limit points)
};

OpenReport open_set_membership(PrimeField f, const Pair& pair, const PointModel& point, unsigned K, int t,
                               PointedOracle& oracle, unsigned depth = 3);

// ------------------------------------------------------------ CB table

/// The pair is a single step in the pattern window of phi (parameters k_max, t).
bool simple_at_zero(const Pair& pr, unsigned k_max, int t, PointedOracle& oracle);

/// The element does not satisfy `largest`, and every node of `w` it does not
/// satisfy lies below `largest`.
bool neg_isolation_check(PrimeField f, const PatternPoset& w, PointedOracle& oracle, const PointElement& pe,
                         const PointedModule& largest);

struct CBEntry {
  CBEntry(PointModel p, Pair pr, unsigned lvl = 0) : point(p), pair(std::move(pr)), level(lvl) {}
  PointModel point;
  Pair pair;
  unsigned level = 0;
  bool neg_isolated = false;
  bool open = false;        // the pair is open on the point
  bool simple = false;      // simple at its level in the window
  bool not_lower = true;    // not simple at any lower level
  bool isolates = false;    // open on no other modeled point of rank >= level
  std::vector<std::string> also_open;
  std::optional<bool> neg_isolation;  // largest formula of the negative part verified
  std::string note;
  bool ok() const { return open && simple && not_lower && isolates && neg_isolation.value_or(true); }
};

struct CBTable {
  unsigned k_max = 0;
  int t = 0;
  std::vector<CBEntry> entries;
  CollapseStudy first, second;  // [0, x^2 | v] and [0, vx = 0]
  ChainMatch first_match, second_match;
  /// Modeled points on which (vx=0 / v=0) is not open.
  std::vector<std::string> closed_for_vx;
  std::vector<std::string> notes;
  const CBEntry* find(const std::string& point) const;
  bool ok() const;
};

/// Level 0 pairs for S and the catalog sources of AR sequences, level 1 for
/// D, N~, C, R~, level 2 for Q_R, G_y, G_x. `t` bounds the degrees used for
/// catalog openness and level 0 windows.
CBTable cb_table(PrimeField f, unsigned k_max, int t, PointedOracle& oracle);

nlohmann::json to_json(const CBTable& t);
std::string to_markdown(const CBTable& t);

}  // namespace dinf
