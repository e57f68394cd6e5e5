#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/catalog.hpp"
#include "dinf/module.hpp"

namespace dinf {

/// A module homomorphism given by generator images. Construction verifies
/// that every source relation maps to zero, so a Morphism value is always
/// well defined.
class Morphism {
 public:
  Morphism(ModulePtr source, ModulePtr target, std::vector<Elem> images, std::string label = "");
  static Morphism parse(ModulePtr source, ModulePtr target, const std::vector<std::string>& images,
                        std::string label = "");
  static Morphism identity(ModulePtr m);
  static Morphism zero(ModulePtr source, ModulePtr target);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return tgt_; }
  const std::vector<Elem>& images() const { return img_; }
  const std::string& label() const { return label_; }

  Elem apply(const Elem& e) const;
  bool is_zero() const;
  /// The common degree of all homogeneous images, if there is one.
  std::optional<int> degree() const;
  Morphism operator+(const Morphism& o) const;
  Morphism scaled(Coeff c) const;
  Morphism negated() const { return scaled(src_->field().neg(1)); }
  bool equals(const Morphism& o) const;
  /// Matrix of the degree-d part, M_d -> N_{d+e}, for a homogeneous map.
  Mat matrix(int d, int e) const;

  nlohmann::json to_json() const;

 private:
  ModulePtr src_, tgt_;
  std::vector<Elem> img_;
  std::string label_;
};

/// True when a and b have identical presentations.
bool same_module(const ThreadModule& a, const ThreadModule& b);

/// g after f; requires target(f) == source(g).
Morphism compose(const Morphism& f, const Morphism& g);

/// Hom_e(M, N): homogeneous maps of degree e, by solving the relation
/// constraints on the unknown generator images.
std::vector<Morphism> hom_degree(const ModulePtr& m, const ModulePtr& n, int e);

/// Lowest degree in which Hom can be nonzero.
int hom_min_degree(const ThreadModule& m, const ThreadModule& n);

struct StabilizationCertificate {
  int t0 = 0;
  std::vector<std::string> answers;  // at t0, t0+1, t0+2
};

struct HomWindow {
  ModulePtr source, target;
  int depth = 0;
  std::vector<int> degrees;
  std::vector<std::size_t> dims;
  std::vector<Morphism> basis;
  bool stable = false;
  StabilizationCertificate certificate;
};

/// Hom_e for every e whose images reach at most `t` above the target's
/// lowest generator. The certificate records whether Hom vanishes in the
/// windows t, t+1, t+2.
HomWindow hom_window(const ModulePtr& m, const ModulePtr& n, int t);

enum class Verdict { Yes, No, Indeterminate };
std::string to_string(Verdict v);

struct PointedResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Morphism> witness;
  StabilizationCertificate certificate;
};

/// Is there f: M -> N with f(m) = n? The source point must be homogeneous;
/// each homogeneous component of n is solved in the matching Hom degree.
PointedResult pointed_exists(const ModulePtr& m, const Elem& pm, const ModulePtr& n, const Elem& pn, int t);

/// Cached variant used by the pattern enumerator: Hom bases are reused across
/// calls with the same (source, target, degree).
class HomCache {
 public:
  const std::vector<Morphism>& get(const ModulePtr& m, const ModulePtr& n, int e);
  bool pointed(const ModulePtr& m, const Elem& pm, const ModulePtr& n, const Elem& pn);

 private:
  std::map<std::tuple<const ThreadModule*, const ThreadModule*, int>, std::vector<Morphism>> cache_;
  std::vector<ModulePtr> keep_;
};

/// Dual Hom(M, S) computed in a window, presented, and matched to the
/// catalog by a degreewise bijective map.
struct DualResult {
  FamilyId input;
  std::optional<FamilyId> match;
  ModulePtr dual_module;
  int shift = 0;
  std::vector<std::size_t> hilbert;
  bool iso_verified = false;
};
DualResult dual(PrimeField f, FamilyId id, unsigned seed = 1);

/// Presentation of Hom(M, S), generated in degrees at most `window` above the lowest.
ModulePtr hom_to_ring(const ModulePtr& m, int window);

/// Finds a degree-s map a -> b that is bijective in every degree of the window.
std::optional<Morphism> find_isomorphism(const ModulePtr& a, const ModulePtr& b, int s, int window,
                                         std::uint64_t seed, int trials = 40);

struct IndecomposabilityVerdict {
  bool decomposed = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  int depth = 0;
  std::size_t quotient_dim = 0;  // dim of M / m^T M
  std::size_t end_dim = 0;       // dim of the End window acting on it
  Mat idempotent;                // set when decomposed
  std::size_t idempotent_rank = 0;
  std::string summary;
};

/// Randomized Fitting test on V = M / m^T M, which every endomorphism
/// preserves. A random endomorphism power that is neither zero nor invertible
/// splits V = Im + Ker and yields an explicit idempotent.
IndecomposabilityVerdict is_indecomposable(const ModulePtr& m, int T, std::size_t trials, std::uint64_t seed);

struct EndoChainReport {
  unsigned k = 0;
  bool shift_map_ok = false;              // m -> n, n -> 0
  bool y_map_ok = false;                  // m -> m*y - n, n -> m*x
  bool yk_map_ok = false;                 // m -> m*y^k - n, n -> m*x
  bool chain_strict = false;              // V m x^2 > V n x^2 > V m x^3 > ...
  std::vector<std::size_t> chain_dims;    // windowed dims of each term
  int window = 0;
};
EndoChainReport endo_chain_check(PrimeField f, unsigned k, int t);

}  // namespace dinf
