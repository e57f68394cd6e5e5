#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/linalg.hpp"
#include "dinf/ring.hpp"

namespace dinf {

/// A free-module basis element: generator index times a normal-form monomial.
struct Term {
  unsigned gen = 0;
  Monomial mono;
  bool operator==(const Term&) const = default;
  friend bool operator<(const Term& l, const Term& r) {
    if (l.gen != r.gen) return l.gen < r.gen;
    return l.mono < r.mono;
  }
};

/// An element of a free S-module, written on generator translates. Elements
/// of a presented module are represented by any lift; use
/// ThreadModule::normal_form for the canonical representative.
class Elem {
 public:
  explicit Elem(PrimeField f) : f_(f) {}

  static Elem term(PrimeField f, unsigned gen, Monomial m = {}, Coeff c = 1);

  const PrimeField& field() const { return f_; }
  const std::map<Term, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(const Term& t) const;

  void add_term(const Term& t, Coeff c);
  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const { return scaled(f_.neg(1)); }
  Elem scaled(Coeff c) const;
  Elem times(const Monomial& m) const;
  Elem times(const SElem& s) const;
  bool operator==(const Elem& o) const { return terms_ == o.terms_; }

 private:
  PrimeField f_;
  std::map<Term, Coeff> terms_;
};

class ThreadModule;
using ModulePtr = std::shared_ptr<const ThreadModule>;

/// Matrices of x and y on the nodes of depth <= t (depth = exponent distance
/// from the node's generator). Images leaving the window are dropped and
/// recorded in out_of_window.
struct MatrixModule {
  std::size_t dim = 0;
  Mat X, Y;
  std::vector<Term> basis;
  std::vector<std::string> basis_labels;
  unsigned depth = 0;
  std::vector<std::string> out_of_window;
};

/// A finitely presented graded S-module: generators with integer degrees and
/// homogeneous relations. Each degree piece is computed exactly on demand as
/// (free module)_d / (relation submodule)_d; its surviving free basis elements
/// are the module's nodes, so the thread structure (x- and y-threads plus
/// finitely many links) is read off the nodes and the action matrices.
class ThreadModule {
 public:
  struct Spec {
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<int> gen_degrees;
    std::vector<Elem> relations;
    /// When set (single-generator ideals of S), elements print and parse in
    /// the ambient notation of S: the generator stands for this element.
    std::optional<SElem> display_image;
  };

  ThreadModule(PrimeField f, Spec spec);
  static ModulePtr make(PrimeField f, Spec spec) { return std::make_shared<const ThreadModule>(f, std::move(spec)); }

  const PrimeField& field() const { return f_; }
  const std::string& name() const { return spec_.name; }
  std::size_t num_gens() const { return spec_.gen_names.size(); }
  const std::vector<std::string>& gen_names() const { return spec_.gen_names; }
  const std::vector<int>& gen_degrees() const { return spec_.gen_degrees; }
  int gen_degree(unsigned g) const { return spec_.gen_degrees.at(g); }
  const std::vector<Elem>& relations() const { return spec_.relations; }
  const Spec& spec() const { return spec_; }
  int min_gen_degree() const;
  int max_gen_degree() const;
  /// Largest relation degree; min_gen_degree() when there are none.
  int max_relation_degree() const;

  int degree(const Term& t) const { return gen_degree(t.gen) + static_cast<int>(t.mono.degree()); }
  /// Degrees present in the lift of e.
  std::vector<int> degrees(const Elem& e) const;
  Elem component(const Elem& e, int d) const;
  /// Degree of a homogeneous element; throws when e mixes degrees or is zero.
  int homogeneous_degree(const Elem& e) const;

  std::size_t dim(int d) const;
  /// The surviving free basis elements of degree d.
  std::vector<Term> nodes(int d) const;
  /// Coordinates of the degree-d component of e on nodes(d).
  Vec coords(const Elem& e, int d) const;
  Elem from_coords(int d, const Vec& v) const;
  Elem normal_form(const Elem& e) const;
  bool is_zero(const Elem& e) const;
  bool equal(const Elem& a, const Elem& b) const { return is_zero(a - b); }
  /// Matrix of multiplication by a monomial from degree d to d + deg(m).
  Mat action(int d, const Monomial& m) const;

  /// Parses "2*m*x - n*y^2"; a single-generator module also accepts
  /// generator-free polynomials ("x^2" in S).
  Elem parse(const std::string& text) const;
  std::string to_string(const Elem& e, bool reduce = true) const;
  /// "m*x*y^2" style label of a free basis element.
  std::string label(const Term& t) const;

  /// Socle of the degree window [min_gen_degree, upto): solutions of
  /// v x = v y = 0, returned as homogeneous elements.
  std::vector<Elem> socle(int upto) const;
  /// Socle decided on the link region: scanned to max relation degree + 4,
  /// past which every catalog thread is a free shift.
  std::vector<Elem> socle() const { return socle(max_relation_degree() + 4); }

  MatrixModule truncate(unsigned t) const;

  /// Same module with every degree raised by s.
  ModulePtr shifted(int s) const;
  /// Quotient by the submodule generated by extra homogeneous elements.
  ModulePtr quotient(const std::vector<Elem>& extra, std::string name) const;

  nlohmann::json to_json(int window) const;

 private:
  struct Piece {
    std::vector<Term> free;
    std::map<Term, std::size_t> index;
    Subspace rel;
    std::vector<std::size_t> nodes;
    std::vector<long> node_of;  // free index -> node index, -1 for pivots
  };
  const Piece& piece(int d) const;
  Vec free_vector(const Elem& e, int d, const Piece& p) const;

  PrimeField f_;
  Spec spec_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Piece>> cache_;
};

/// Direct sum; generators of b are renamed with a prime when names clash.
ModulePtr direct_sum(const std::vector<ModulePtr>& parts, std::string name = "");
/// Embeds an element of summand i into the direct sum.
Elem inject(const std::vector<ModulePtr>& parts, std::size_t i, const Elem& e);

/// Presentation of the submodule of `ambient` generated by homogeneous
/// elements, with syzygies computed through degree t. The returned flag is
/// true when no new syzygy generator appeared in the last three degrees.
struct SubmodulePresentation {
  ModulePtr module;
  bool stable = false;
};
SubmodulePresentation present_submodule(const ModulePtr& ambient, const std::vector<Elem>& gens,
                                        std::vector<std::string> names, int t, std::string name);

/// Free module of rank r with the given generator degrees.
ModulePtr free_module(PrimeField f, std::vector<int> degrees, std::string name);

/// Iterated socle quotient M -> M/Soc -> ... until the socle vanishes.
struct CmReduction {
  ModulePtr module;
  unsigned rounds = 0;
  /// Total dimension removed (sum of socle dimensions).
  std::size_t removed = 0;
};
CmReduction cm_reduce(const ModulePtr& m, int window = -1);

/// True when every generator is killed by the relations.
bool is_zero_module(const ModulePtr& m);

}  // namespace dinf
