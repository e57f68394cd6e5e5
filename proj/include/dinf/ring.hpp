#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dinf/field.hpp"
#include "dinf/linalg.hpp"

namespace dinf {

/// A monomial x^a y^b. Normal-form monomials of S = F[x,y]/(x^2 y) are
/// exactly those with !(a >= 2 && b >= 1).
struct Monomial {
  unsigned a = 0;  // x exponent
  unsigned b = 0;  // y exponent

  unsigned degree() const { return a + b; }
  bool is_normal() const { return !(a >= 2 && b >= 1); }
  bool operator==(const Monomial&) const = default;

  /// Order by total degree, then by descending x exponent.
  friend bool operator<(const Monomial& l, const Monomial& r) {
    if (l.degree() != r.degree()) return l.degree() < r.degree();
    return l.a > r.a;
  }
};

/// Product in S; nullopt when the product is killed by x^2 y.
std::optional<Monomial> mul(const Monomial& l, const Monomial& r);

std::string to_string(const Monomial& m);

/// Normal-form monomials of the given total degree, in monomial order.
std::vector<Monomial> monomials_of_degree(unsigned d);

/// All normal-form monomials of total degree < d (d >= 1).
std::vector<Monomial> basis_upto(unsigned d);

/// Dense polynomial over F_p in an arbitrary list of variables; used as the
/// parse target for every textual polynomial in the engine.
using RawPoly = std::map<std::vector<unsigned>, Coeff>;

/// Parses "+ - * ^ ( )", integer constants and division by nonzero integer
/// constants. Throws AlgebraError on malformed input or division by p.
RawPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                         const PrimeField& field);

/// An element of S = F_p[x,y]/(x^2 y) in normal form.
class SElem {
 public:
  explicit SElem(PrimeField f) : f_(f) {}
  SElem(PrimeField f, std::map<Monomial, Coeff> terms);

  static SElem monomial(PrimeField f, Monomial m, Coeff c = 1);
  static SElem x(PrimeField f) { return monomial(f, {1, 0}); }
  static SElem y(PrimeField f) { return monomial(f, {0, 1}); }
  static SElem one(PrimeField f) { return monomial(f, {0, 0}); }

  const PrimeField& field() const { return f_; }
  const std::map<Monomial, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(const Monomial& m) const;
  /// Largest total degree present; 0 for the zero element.
  unsigned degree() const;
  /// Homogeneous component of the given total degree.
  SElem component(unsigned d) const;

  SElem operator+(const SElem& o) const;
  SElem operator-(const SElem& o) const;
  SElem operator-() const;
  SElem operator*(const SElem& o) const;
  SElem scaled(Coeff c) const;
  SElem pow(unsigned e) const;
  bool operator==(const SElem& o) const { return f_ == o.f_ && terms_ == o.terms_; }

  std::string to_string() const;
  nlohmann::json to_json() const;
  static SElem from_json(PrimeField f, const nlohmann::json& j);

 private:
  void put(const Monomial& m, Coeff c);
  PrimeField f_;
  std::map<Monomial, Coeff> terms_;
};

/// Normal form of a polynomial expression in x and y.
SElem nf(const std::string& expr, const PrimeField& f);

/// The element (x + y)^k.
SElem x_plus_y_pow(const PrimeField& f, unsigned k);

/// Exact division by (x + y) in S; nullopt when a is not a multiple.
std::optional<SElem> divide_by_x_plus_y(const SElem& a);

enum class Truth { False, True, Indeterminate };
std::string to_string(Truth t);

/// An element a / (x+y)^k of the localization Q_S = S[(x+y)^-1]. Identities
/// are only asserted on monomials of total degree <= depth_bound.
class LocElem {
 public:
  LocElem(SElem numerator, unsigned denom_power, unsigned depth_bound);
  static LocElem from_selem(const SElem& s, unsigned depth_bound) { return {s, 0, depth_bound}; }

  const SElem& numerator() const { return num_; }
  unsigned denom_power() const { return k_; }
  unsigned depth_bound() const { return t_; }

  LocElem operator+(const LocElem& o) const;
  LocElem operator-(const LocElem& o) const;
  LocElem operator*(const LocElem& o) const;
  LocElem operator*(const SElem& s) const;
  LocElem pow(unsigned e) const;

  /// Cancel common (x+y) factors while the division is exact.
  LocElem reduced() const;
  std::string to_string() const;

 private:
  SElem num_;
  unsigned k_;
  unsigned t_;
};

/// Zero test by cross-multiplication: a/(x+y)^k = 0 iff a = 0, since x+y is a
/// nonzerodivisor. Nonzero terms above the depth bound are indeterminate.
Truth loc_is_zero(const LocElem& a);

/// The named elements of Q_S used throughout: u = x/(x+y), e = u^2,
/// z = x^2/(x+y), n_k = xy/(x+y)^k.
namespace qs {
LocElem u(const PrimeField& f, unsigned t);
LocElem e(const PrimeField& f, unsigned t);
LocElem z(const PrimeField& f, unsigned t);
LocElem n(const PrimeField& f, unsigned k, unsigned t);
LocElem one(const PrimeField& f, unsigned t);
LocElem parse(const std::string& numerator, unsigned k, const PrimeField& f, unsigned t);
}  // namespace qs

/// A finite-dimensional graded quotient F_p[v1..vn]/I with homogeneous I.
class QuotientRingModel {
 public:
  QuotientRingModel(PrimeField f, std::vector<std::string> vars, std::vector<std::string> relations);

  std::size_t dim() const;
  std::size_t dim(unsigned d) const { return d < pieces_.size() ? pieces_[d].basis.size() : 0; }
  unsigned top_degree() const { return static_cast<unsigned>(pieces_.size()) - 1; }
  /// Basis monomials (exponent vectors) of the given degree.
  std::vector<std::vector<unsigned>> basis(unsigned d) const;
  const std::vector<std::string>& vars() const { return vars_; }

  /// dim of {v : v * var = 0 for every variable}.
  std::size_t socle_dim() const;

 private:
  struct Piece {
    std::vector<std::vector<unsigned>> monos;  // all monomials of degree d
    Subspace relations;                        // I_d inside span(monos)
    std::vector<std::size_t> basis;            // non-pivot monomial indices
  };
  Vec reduce_to_basis(unsigned d, const Vec& full) const;
  Vec times_var(unsigned d, const Vec& basis_coords, std::size_t var) const;

  PrimeField f_;
  std::vector<std::string> vars_;
  std::vector<Piece> pieces_;
};

/// Convenience models used in checks.
QuotientRingModel model_s_mod_x_plus_y(const PrimeField& f);
QuotientRingModel model_sprime_mod_x_plus_y(const PrimeField& f);
QuotientRingModel model_residue_field(const PrimeField& f);

}  // namespace dinf
