#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/hom.hpp"

namespace dinf {

/// Degree-e part of a space of maps between two catalog modules, as
/// coordinate vectors of generator images.
struct HomBlock {
  std::vector<Vec> basis;
  Subspace span;
};

/// blocks[i][j][e] for catalog modules i, j.
using HomTable = std::vector<std::vector<std::map<int, HomBlock>>>;
using MapTable = std::vector<std::vector<std::map<int, std::vector<Morphism>>>>;
using MatCache = std::map<std::tuple<const void*, int, int>, Mat>;

/// Radical powers between the catalog modules with parameter <= k_max. rad
/// is the non-isomorphism part of Hom; rad^{n+1} is spanned by composites of
/// rad^n with rad through catalog modules. Only degrees that can contribute to
/// maps from `from` to `to` of degree at most lowest + t are kept, so the
/// window of that pair is exact.
class RadicalEngine {
 public:
  RadicalEngine(PrimeField f, unsigned k_max, int t, FamilyId from = {Family::S}, FamilyId to = {Family::S});

  const PrimeField& field() const { return f_; }
  unsigned k_max() const { return k_max_; }
  int depth() const { return t_; }
  const std::vector<ModulePtr>& modules() const { return mods_; }
  std::size_t index(FamilyId id) const;
  int lowest(std::size_t i, std::size_t j) const { return lo_[i][j]; }
  /// Largest degree of maps i -> j kept in tables.
  int reach(std::size_t i, std::size_t j) const { return need_[i][j]; }

  const HomTable& rad1() const { return rad1_; }
  /// rad^n for n = 1..n, computed once and cached.
  const HomTable& power(unsigned n);
  /// Composites "b after a" over all middle modules, in the blocks of `cap`
  /// (which must contain the product).
  HomTable product(const HomTable& a, const HomTable& b, const HomTable& cap);
  /// Composites S -> ... -> S of j factors from `factor`, for j = 1..J.
  std::vector<HomTable> powers_of(const HomTable& factor, unsigned J);

  Vec vectorize(const Morphism& m, int e) const;
  Morphism morphism(std::size_t i, std::size_t j, int e, const Vec& v) const;
  /// Is the map in the table block?
  bool contains(const HomTable& t, const Morphism& m) const;

 private:
  Vec compose_vec(std::size_t i, std::size_t k, int e1, const Vec& fv, const Morphism& g, int e2,
                  MatCache& cache) const;
  HomTable product_capped(const HomTable& a, const MapTable& b, MatCache& cache, const HomTable& cap);
  void add(HomTable& t, std::size_t i, std::size_t j, int e, Vec v) const;
  HomTable empty_table() const;

  PrimeField f_;
  unsigned k_max_;
  int t_;
  std::vector<FamilyId> ids_;
  std::vector<ModulePtr> mods_;
  std::vector<std::vector<int>> lo_, need_;
  HomTable rad1_;
  MapTable rad1_maps_;
  std::vector<HomTable> powers_;
  MatCache mats_;
};

struct RadicalWindow {
  std::string source, target;
  unsigned n_max = 0, k_max = 0;
  int t = 0;
  int lowest = 0;
  std::vector<std::vector<std::size_t>> dims;  // dims[n-1][e - lowest]
  std::vector<std::vector<std::string>> generators;  // rad^{n_max}: images of the generators, per degree
  bool descending = false;  // rad^{n+1} inside rad^n in every degree
  std::vector<unsigned> strict_steps;  // n with dim rad^{n+1} < dim rad^n
  std::size_t total(unsigned n) const;
};

RadicalWindow rad_power(PrimeField f, FamilyId m, FamilyId n, unsigned n_max, unsigned k_max, int t);
nlohmann::json to_json(const RadicalWindow& w);

/// x-depth of products of the approximate infinite radical Omega =
/// rad^{n_max}(S, S): for Omega^j, the least exponent of a pure x-power in
/// the image of 1, and the least y-degree of a y-term.
struct ImageDepth {
  unsigned n_max = 0, k_max = 0;
  int t = 0;
  std::vector<int> g;  // g[j-1]; t+1 when no pure x-power appears
  std::vector<int> h;  // h[j-1]; t+1 when no y-term appears
  bool g_monotone = false;
  bool g_grows = false;
  bool h_monotone = false;
};

ImageDepth image_depth(RadicalEngine& eng, unsigned n_max, unsigned J);

struct DivisibilityReport {
  std::string module;
  int t = 0;
  std::vector<std::vector<std::size_t>> dims;  // dims[J][d - lowest]: x^J M in degree d
  bool shrinking = false;  // non-increasing in J for each d
  bool vanishes = false;   // zero for J = t + 1
  bool ok() const { return shrinking && vanishes; }
};

/// {v in M_d : x^J | v} for 0 <= J <= t + 1 over the window of M.
DivisibilityReport divisibility_vanishing_check(PrimeField f, FamilyId m, int t);

enum class Status { Pass, Fail, Indeterminate };
std::string to_string(Status s);

struct NilIndexReport {
  unsigned k_max = 0, n_max = 0;
  int t = 0;
  std::vector<std::pair<std::string, bool>> lower;  // facts behind nil(rad) >= w*2
  std::vector<std::pair<std::string, bool>> upper;  // facts behind rad^{w*2} = 0
  Status lower_status = Status::Indeterminate, upper_status = Status::Indeterminate;
  std::string lower_verdict, upper_verdict, note;
  Status status() const;
};

NilIndexReport nil_index_report(PrimeField f, unsigned k_max, unsigned n_max, int t);
nlohmann::json to_json(const NilIndexReport& r);

}  // namespace dinf
