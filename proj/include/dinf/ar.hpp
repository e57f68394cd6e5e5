#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/hom.hpp"

namespace dinf {

/// One of the irreducible maps between catalog modules. Ids 1..15 follow the
/// standard list; item 15 lists two maps, C -> D (id 15) and D -> C (id 16).
struct IrreducibleEdge {
  unsigned id = 0;
  unsigned k = 0;
  FamilyId source, target;
  Morphism morphism;
};

constexpr unsigned kEdgeCount = 16;

/// Edge `id` at parameter k; ids 9..16 ignore k. Ids 2 and 6 need k >= 2.
IrreducibleEdge edge(PrimeField f, unsigned id, unsigned k = 1);
std::string edge_name(unsigned id);
/// Every edge instance whose endpoints have parameters <= k_max.
std::vector<IrreducibleEdge> quiver_edges(PrimeField f, unsigned k_max);

enum class ARFamily { M, N, Y, Y1, X, X1, A, B };
std::string to_string(ARFamily a, unsigned k);
std::vector<std::pair<ARFamily, unsigned>> ar_sequence_ids(unsigned k_max);

/// 0 -> L -> P_1 + ... + P_r -> R -> 0 with the middle summands and the right
/// end shifted so every map has degree 0. The right map carries the sign
/// convention (+, -, +, ...) on the summands.
struct ARSequence {
  std::string id;
  ModulePtr left, right, middle;
  std::vector<ModulePtr> parts;
  std::vector<Morphism> left_maps, right_maps;  // L -> P_i and (signed) P_i -> R
  Morphism f, g;                                // L -> E and E -> R
};

ARSequence ar_sequence(PrimeField f, ARFamily fam, unsigned k);

/// Assembles a short sequence from component maps, shifting targets so that
/// all maps become degree 0. Signs are taken as given.
ARSequence assemble_sequence(std::string id, const std::vector<Morphism>& left, const std::vector<Morphism>& right);

struct ExactnessReport {
  bool composite_zero = false;
  bool left_injective = false;
  bool right_surjective = false;
  bool dims_additive = false;
  int lo = 0, hi = 0;
  std::vector<std::string> failures;
  bool ok() const { return composite_zero && left_injective && right_surjective && dims_additive; }
};

/// Degreewise check on [lowest generator, lowest generator + t].
ExactnessReport verify_exact(const ARSequence& s, int t);

struct AlmostSplitReport {
  std::size_t tested = 0;
  std::size_t factored = 0;
  bool identity_factors = true;  // must be false for a non-split sequence
  std::vector<std::string> failures;
  bool ok() const { return tested > 0 && tested == factored && !identity_factors; }
};

/// Every non-retraction K -> R from the catalog window (parameters <= k_max,
/// Hom degrees up to t above the lowest) must factor through the right map.
AlmostSplitReport almost_split_check(PrimeField f, const ARSequence& s, unsigned k_max, int t);

/// Whether h: K -> Z factors as g * phi for some phi: K -> E.
bool factors_through(const Morphism& h, const Morphism& g);

struct CorayReport {
  unsigned K = 0;
  int t = 0;
  bool y_coray_is_D = false;   // stable image of Y_{K+1} -> ... -> Y_1 -> S equals xS
  bool x_powers_in_image = false;
  bool y_power_leaves = false;  // y^K in the stage-K image but not in the stage-(K+1) image
  bool m_coray_is_C = false;    // stable image of M_K -> ... -> M_1 -> S equals xyS
  std::vector<std::string> stable_basis;
  bool ok() const { return y_coray_is_D && x_powers_in_image && y_power_leaves && m_coray_is_C; }
};
CorayReport coray_limit_check(PrimeField f, unsigned K, int t);

enum class InfiniteAR { CokernelD, CokernelC };

struct InfiniteARReport {
  std::string id;
  unsigned K = 0;
  std::optional<ARSequence> sequence;
  ExactnessReport exactness;
  bool composite_zero = false;
  std::string left_term, right_term;  // the two terms of u(f(generator)) inside S
  bool cokernel_iso = false;
  bool ok() const { return composite_zero && left_term == right_term && exactness.ok() && cokernel_iso; }
};

/// Stage-K model: R~ -> M_K, N -> X_K (X_{K+1} in the second sequence, so
/// that y * n_{K+1} = n_K lies in the image), with gradings shifted to make
/// every map degree 0.
InfiniteARReport infinite_ar_check(PrimeField f, InfiniteAR which, unsigned K, int t);

/// The irreducible maps obtained by projecting the two sequences, at stage K.
std::vector<std::pair<std::string, bool>> corollary_maps_check(PrimeField f, unsigned K);

/// True when x^2 annihilates the module (a module over F[x,y]/(x^2)).
bool killed_by_x_squared(const ModulePtr& m);

nlohmann::json quiver_json(PrimeField f, unsigned k_max);
std::string quiver_dot(PrimeField f, unsigned k_max);
nlohmann::json sequence_json(const ARSequence& s, const ExactnessReport& e);

}  // namespace dinf
