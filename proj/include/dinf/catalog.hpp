#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/module.hpp"

namespace dinf {

enum class Family { S, A, B, C, D, M, Y, X, N };

struct FamilyId {
  Family family = Family::S;
  unsigned k = 0;  // only for M, Y, X, N

  bool parameterized() const;
  bool operator==(const FamilyId&) const = default;
  friend bool operator<(const FamilyId& l, const FamilyId& r) {
    if (l.family != r.family) return l.family < r.family;
    return l.k < r.k;
  }
};

std::string family_letter(Family f);
std::string to_string(const FamilyId& id);
/// Accepts "S", "A", ..., "M2", "M_2", "M(2)".
FamilyId parse_family_id(const std::string& text);

/// S, A, B, C, D and the four parameterized families for 1 <= k <= k_max.
std::vector<FamilyId> catalog_ids(unsigned k_max);

/// The catalog module with its standard presentation and grading:
///   S   s(0)                       A  a(2): a*y        B  b(1): b*x^2
///   C   c(2): c*x                  D  d(1): d*x*y
///   M_k m(k+1), n(2): m*x - n*y^k, n*x
///   Y_k m(k),   n(1): m*x - n*y^k, n*x*y
///   X_k m(k),   n(2): m*x*y - n*y^k, n*x
///   N_k m(k),   n(1): m*x*y - n*y^(k+1), n*x*y
ModulePtr make(PrimeField f, FamilyId id);

/// Normal form of a generator-translate expression.
Elem element_eval(const ThreadModule& m, const std::string& expr);

/// Largest monomial depth occurring in a relation (0 without relations).
unsigned relation_depth(const ThreadModule& m);

/// Depth truncation with the catalog precondition t >= relation depth + 2.
MatrixModule truncate_checked(const ThreadModule& m, unsigned t);

/// Certificate that generator images define an isomorphism onto the
/// submodule they generate, checked through degree `depth`.
struct IsoCertificate {
  bool relations_vanish = false;  // M -> ambient is well defined
  bool injective = false;         // rank of M_d -> ambient_d equals dim M_d for every d <= depth
  bool syzygies_hold = false;     // every syzygy of the images vanishes in M (inverse well defined)
  int depth = 0;
  std::vector<std::string> failures;
  bool ok() const { return relations_vanish && injective && syzygies_hold; }
};

struct Realization {
  FamilyId id;
  ModulePtr module;
  ModulePtr ambient;                 // S or S^2 (second summand shifted)
  std::vector<Elem> images;          // one per generator of module
  std::vector<std::string> image_strings;
  IsoCertificate certificate;
};

/// Explicit embedding into S or S^2 with a verified certificate.
Realization realize(PrimeField f, FamilyId id, int depth);

/// Alternative realization inside Q_S, cleared of denominators: X_k via
/// m -> (x+y)^k, n -> xy and M_k via m -> y(x+y)^k, n -> xy.
Realization realize_localized(PrimeField f, FamilyId id, int depth);

/// Generic certificate for images of m's generators in `ambient`.
IsoCertificate certify_embedding(const ModulePtr& m, const ModulePtr& ambient, const std::vector<Elem>& images,
                                 int depth);

/// Image of an element of m under generator images.
Elem apply_images(const ModulePtr& m, const std::vector<Elem>& images, const Elem& e);

ModulePtr ring_module(PrimeField f);
/// S(0) + S(-shift): generators e1 in degree 0 and e2 in degree `shift`.
ModulePtr ring_square(PrimeField f, int shift);

enum class PointKind { Catalog, Ntilde, Rtilde, QR, Gx, Gy };

/// A point of the CM part of the spectrum: a catalog module, or one of the
/// infinitely generated points modelled by a ray of finite stages.
struct PointModel {
  PointKind kind = PointKind::Catalog;
  std::optional<FamilyId> id;

  bool is_limit() const { return kind != PointKind::Catalog; }
  bool operator==(const PointModel&) const = default;
};

std::string to_string(const PointModel& p);
PointModel parse_point(const std::string& text);
std::vector<PointModel> limit_points();

/// One stage of a limit point: a finite module, the designated element (the
/// image of the stage-1 designated element), and the ray map to stage K+1
/// as generator images.
struct StageModel {
  PointModel point;
  unsigned stage = 0;
  ModulePtr module;
  Elem designated;
  ModulePtr next;
  std::vector<Elem> ray_images;
  int ray_degree = 0;
};

/// Ntilde: X_K with m -> m, n -> n*y.  Rtilde: M_K with the same ray map.
/// G_x: A along multiplication by x.  G_y: C along y.  Q_R: B along y.
StageModel limit_stage(PrimeField f, PointModel p, unsigned K);

nlohmann::json catalog_json(PrimeField f, FamilyId id, int window);

}  // namespace dinf
