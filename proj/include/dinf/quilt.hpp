#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/ar.hpp"
#include "dinf/hom.hpp"

namespace dinf {

struct QuiltNode {
  std::string name;
  bool boundary = false;
  int col = 0, row = 0;  // strip coordinates
};

struct QuiltEdge {
  std::string from, to, label;
  bool limit = false;          // attached at the boundary
  bool reconstructed = false;  // placement chosen without a reference drawing
};

/// Nodes identified by the glide reflection, and the map doing it.
struct GlidePair {
  std::string a, b, via;
};

struct QuiltGraph {
  unsigned k_max = 0;
  std::vector<QuiltNode> nodes;
  std::vector<QuiltEdge> edges;
  std::vector<GlidePair> glide;
  std::vector<std::string> notes;

  bool has_node(const std::string& name) const;
  bool has_edge(const std::string& from, const std::string& to) const;
  std::vector<QuiltEdge> in_edges(const std::string& name) const;
  /// Edges between catalog nodes.
  std::vector<QuiltEdge> finite_edges() const;
};

/// AR quiver with parameters <= k_max, the five limit points and the limit
/// edges between them.
QuiltGraph build_quilt(PrimeField f, unsigned k_max);
nlohmann::json quilt_json(const QuiltGraph& q);
/// Strip drawing: nodes pinned at strip coordinates, glide pairs dashed.
std::string quilt_dot(const QuiltGraph& q);

struct SquareReport {
  unsigned K = 0;
  bool first = false;   // R~ in N, R~ -x-> C, N -x-> D, C in D
  bool second = false;  // N -y-> R~, N -x-> D, R~ -x-> C, D -y-> C
  bool nonzero = false; // every side is a nonzero map
  std::vector<std::string> details;
  bool ok() const { return first && second && nonzero; }
};

/// Both squares at stage K: R~ by M_K, N by X_K (X_{K+1} as the source of
/// the y-edge). Commutation is checked on generator images.
SquareReport verify_squares(PrimeField f, unsigned K, int t);

struct Revolution {
  unsigned K = 0;
  std::vector<std::string> path;  // module names along the loop
  std::vector<Morphism> steps;
  Morphism map;                   // S -> S
  std::string image_of_one;
  std::vector<std::string> notes;
};

/// S -> X_1 -> N_1 -> ... -> X_K -x-> D -> Y_K -> N_{K-1} -> Y_{K-1} -> ... -> Y_1 -> S.
Revolution revolution(PrimeField f, unsigned K);

}  // namespace dinf
