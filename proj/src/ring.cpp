#include "dinf/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dinf {

std::optional<Monomial> mul(const Monomial& l, const Monomial& r) {
  Monomial m{l.a + r.a, l.b + r.b};
  if (!m.is_normal()) return std::nullopt;
  return m;
}

std::string to_string(const Monomial& m) {
  if (m.a == 0 && m.b == 0) return "1";
  std::string s;
  if (m.a) s += m.a == 1 ? "x" : "x^" + std::to_string(m.a);
  if (m.b) {
    if (!s.empty()) s += "*";
    s += m.b == 1 ? "y" : "y^" + std::to_string(m.b);
  }
  return s;
}

std::vector<Monomial> monomials_of_degree(unsigned d) {
  if (d == 0) return {{0, 0}};
  if (d == 1) return {{1, 0}, {0, 1}};
  return {{d, 0}, {1, d - 1}, {0, d}};
}

std::vector<Monomial> basis_upto(unsigned d) {
  std::vector<Monomial> out;
  for (unsigned k = 0; k < d; ++k)
    for (auto m : monomials_of_degree(k)) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct PolyOps {
  const PrimeField& f;
  std::size_t nvars;

  RawPoly constant(Coeff c) const {
    RawPoly p;
    if (c) p[std::vector<unsigned>(nvars, 0)] = c;
    return p;
  }
  RawPoly add(RawPoly a, const RawPoly& b, bool negate = false) const {
    for (const auto& [e, c] : b) {
      Coeff v = f.add(a[e], negate ? f.neg(c) : c);
      if (v) a[e] = v; else a.erase(e);
    }
    for (auto it = a.begin(); it != a.end();) it = it->second ? std::next(it) : a.erase(it);
    return a;
  }
  RawPoly mul(const RawPoly& a, const RawPoly& b) const {
    RawPoly out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<unsigned> e(nvars);
        for (std::size_t i = 0; i < nvars; ++i) e[i] = ea[i] + eb[i];
        Coeff v = f.add(out[e], f.mul(ca, cb));
        if (v) out[e] = v; else out.erase(e);
      }
    return out;
  }
};

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars, const PrimeField& f)
      : s_(s), vars_(vars), ops_{f, vars.size()} {}

  RawPoly run() {
    RawPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw AlgebraError("cannot parse polynomial \"" + s_ + "\": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  unsigned long long number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    unsigned long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
      if (v > (1ull << 40)) fail("integer too large");
    }
    return v;
  }
  RawPoly expr() {
    RawPoly acc = term();
    while (true) {
      if (eat('+')) acc = ops_.add(acc, term());
      else if (eat('-')) acc = ops_.add(acc, term(), true);
      else return acc;
    }
  }
  RawPoly term() {
    RawPoly acc = unary();
    while (true) {
      if (eat('*')) {
        acc = ops_.mul(acc, unary());
      } else if (eat('/')) {
        RawPoly d = unary();
        if (d.size() > 1 || (d.size() == 1 && !is_const(d.begin()->first))) fail("division by a non-constant");
        if (d.empty()) fail("divisor is zero modulo " + std::to_string(ops_.f.prime()));
        acc = ops_.mul(acc, ops_.constant(ops_.f.inv(d.begin()->second)));
      } else {
        return acc;
      }
    }
  }
  static bool is_const(const std::vector<unsigned>& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
  }
  RawPoly unary() {
    if (eat('-')) return ops_.add(RawPoly{}, unary(), true);
    if (eat('+')) return unary();
    return power();
  }
  RawPoly power() {
    RawPoly base = primary();
    if (eat('^')) {
      auto e = number();
      if (e > 4096) fail("exponent too large");
      RawPoly r = ops_.constant(1);
      for (unsigned long long i = 0; i < e; ++i) r = ops_.mul(r, base);
      return r;
    }
    return base;
  }
  RawPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RawPoly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ops_.constant(ops_.f.from_int(static_cast<long long>(number())));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail("unknown symbol '" + name + "'");
      std::vector<unsigned> e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = 1;
      return RawPoly{{e, 1}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  PolyOps ops_;
  std::size_t pos_ = 0;
};

}  // namespace

RawPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars, const PrimeField& field) {
  return Parser(text, vars, field).run();
}

// ------------------------------------------------------------------ SElem

SElem::SElem(PrimeField f, std::map<Monomial, Coeff> terms) : f_(f) {
  for (const auto& [m, c] : terms) put(m, c);
}

SElem SElem::monomial(PrimeField f, Monomial m, Coeff c) {
  SElem s(f);
  s.put(m, c);
  return s;
}

void SElem::put(const Monomial& m, Coeff c) {
  if (!m.is_normal()) return;
  c = c % f_.prime();
  Coeff v = f_.add(coeff(m), c);
  if (v) terms_[m] = v; else terms_.erase(m);
}

Coeff SElem::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

unsigned SElem::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

SElem SElem::component(unsigned d) const {
  SElem out(f_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) out.terms_[m] = c;
  return out;
}

SElem SElem::operator+(const SElem& o) const {
  SElem r = *this;
  for (const auto& [m, c] : o.terms_) r.put(m, c);
  return r;
}
SElem SElem::operator-(const SElem& o) const { return *this + (-o); }
SElem SElem::operator-() const { return scaled(f_.neg(1)); }

SElem SElem::scaled(Coeff c) const {
  SElem r(f_);
  for (const auto& [m, v] : terms_) r.put(m, f_.mul(v, c));
  return r;
}

SElem SElem::operator*(const SElem& o) const {
  if (!(f_ == o.f_)) throw AlgebraError("mixing elements over different primes");
  SElem r(f_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_)
      if (auto m = dinf::mul(ma, mb)) r.put(*m, f_.mul(ca, cb));
  return r;
}

SElem SElem::pow(unsigned e) const {
  SElem r = one(f_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string SElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    long long v = f_.to_signed(c);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    long long a = v < 0 ? -v : v;
    bool unit = m.a == 0 && m.b == 0;
    if (a != 1 || unit) os << a;
    if (!unit) os << (a != 1 ? "*" : "") << dinf::to_string(m);
    first = false;
  }
  return os.str();
}

nlohmann::json SElem::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) terms.push_back({{"xi", m.a}, {"yj", m.b}, {"c", c}});
  return {{"terms", terms}};
}

SElem SElem::from_json(PrimeField f, const nlohmann::json& j) {
  SElem s(f);
  for (const auto& t : j.at("terms")) {
    long long c = t.at("c").get<long long>();
    s.put({t.at("xi").get<unsigned>(), t.at("yj").get<unsigned>()}, f.from_int(c));
  }
  return s;
}

SElem nf(const std::string& expr, const PrimeField& f) {
  RawPoly p = parse_polynomial(expr, {"x", "y"}, f);
  SElem s(f);
  for (const auto& [e, c] : p) s = s + SElem::monomial(f, {e[0], e[1]}, c);
  return s;
}

SElem x_plus_y_pow(const PrimeField& f, unsigned k) { return (SElem::x(f) + SElem::y(f)).pow(k); }

std::optional<SElem> divide_by_x_plus_y(const SElem& a) {
  const PrimeField& f = a.field();
  if (a.is_zero()) return SElem(f);
  if (a.coeff({0, 0})) return std::nullopt;
  SElem q(f);
  for (unsigned d = 1; d <= a.degree(); ++d) {
    // (x+y) * S_{d-1} -> S_d is injective; solve degreewise.
    auto src = monomials_of_degree(d - 1);
    auto dst = monomials_of_degree(d);
    Mat m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      SElem img = SElem::monomial(f, src[j]) * (SElem::x(f) + SElem::y(f));
      for (std::size_t i = 0; i < dst.size(); ++i) m.at(i, j) = img.coeff(dst[i]);
    }
    Vec rhs(dst.size());
    for (std::size_t i = 0; i < dst.size(); ++i) rhs[i] = a.coeff(dst[i]);
    auto sol = solve(f, m, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t j = 0; j < src.size(); ++j)
      if ((*sol)[j]) q = q + SElem::monomial(f, src[j], (*sol)[j]);
  }
  return q;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    default: return "indeterminate";
  }
}

// ---------------------------------------------------------------- LocElem

LocElem::LocElem(SElem numerator, unsigned denom_power, unsigned depth_bound)
    : num_(std::move(numerator)), k_(denom_power), t_(depth_bound) {}

namespace {
SElem lift(const SElem& a, unsigned from, unsigned to) {
  return a * x_plus_y_pow(a.field(), to - from);
}
}  // namespace

LocElem LocElem::operator+(const LocElem& o) const {
  unsigned k = std::max(k_, o.k_);
  return {lift(num_, k_, k) + lift(o.num_, o.k_, k), k, std::min(t_, o.t_)};
}
LocElem LocElem::operator-(const LocElem& o) const {
  unsigned k = std::max(k_, o.k_);
  return {lift(num_, k_, k) - lift(o.num_, o.k_, k), k, std::min(t_, o.t_)};
}
LocElem LocElem::operator*(const LocElem& o) const { return {num_ * o.num_, k_ + o.k_, std::min(t_, o.t_)}; }
LocElem LocElem::operator*(const SElem& s) const { return {num_ * s, k_, t_}; }

LocElem LocElem::pow(unsigned e) const {
  LocElem r = from_selem(SElem::one(num_.field()), t_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

LocElem LocElem::reduced() const {
  LocElem r = *this;
  while (r.k_ > 0) {
    auto q = divide_by_x_plus_y(r.num_);
    if (!q) break;
    r.num_ = *q;
    --r.k_;
  }
  return r;
}

std::string LocElem::to_string() const {
  if (k_ == 0) return num_.to_string();
  return "(" + num_.to_string() + ")*(x+y)^-" + std::to_string(k_);
}

Truth loc_is_zero(const LocElem& a) {
  if (a.numerator().is_zero()) return Truth::True;
  for (const auto& [m, c] : a.numerator().terms())
    if (m.degree() <= a.depth_bound()) return Truth::False;
  return Truth::Indeterminate;
}

namespace qs {
LocElem one(const PrimeField& f, unsigned t) { return LocElem::from_selem(SElem::one(f), t); }
LocElem u(const PrimeField& f, unsigned t) { return {SElem::x(f), 1, t}; }
LocElem e(const PrimeField& f, unsigned t) { return u(f, t).pow(2); }
LocElem z(const PrimeField& f, unsigned t) { return {SElem::x(f).pow(2), 1, t}; }
LocElem n(const PrimeField& f, unsigned k, unsigned t) { return {SElem::x(f) * SElem::y(f), k, t}; }
LocElem parse(const std::string& numerator, unsigned k, const PrimeField& f, unsigned t) {
  return {nf(numerator, f), k, t};
}
}  // namespace qs

// ------------------------------------------------------ QuotientRingModel

namespace {
std::vector<std::vector<unsigned>> exponent_vectors(std::size_t nvars, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned v = left + 1; v-- > 0;) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (nvars == 0) return {{}};
  rec(rec, 0, d);
  return out;
}
unsigned total(const std::vector<unsigned>& e) {
  unsigned s = 0;
  for (auto v : e) s += v;
  return s;
}
}  // namespace

QuotientRingModel::QuotientRingModel(PrimeField f, std::vector<std::string> vars, std::vector<std::string> relations)
    : f_(f), vars_(std::move(vars)) {
  std::vector<RawPoly> rels;
  for (const auto& r : relations) {
    RawPoly p = parse_polynomial(r, vars_, f_);
    if (p.empty()) continue;
    unsigned d0 = total(p.begin()->first);
    for (const auto& [e, c] : p)
      if (total(e) != d0) throw AlgebraError("relation '" + r + "' is not homogeneous");
    rels.push_back(std::move(p));
  }
  constexpr unsigned kMaxDegree = 64;
  for (unsigned d = 0; d <= kMaxDegree; ++d) {
    Piece pc;
    pc.monos = exponent_vectors(vars_.size(), d);
    pc.relations = Subspace(pc.monos.size());
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < pc.monos.size(); ++i) index[pc.monos[i]] = i;
    for (const auto& r : rels) {
      unsigned rd = total(r.begin()->first);
      if (rd > d) continue;
      for (const auto& mu : exponent_vectors(vars_.size(), d - rd)) {
        Vec v(pc.monos.size(), 0);
        for (const auto& [e, c] : r) {
          std::vector<unsigned> s(e);
          for (std::size_t i = 0; i < s.size(); ++i) s[i] += mu[i];
          v[index.at(s)] = f_.add(v[index.at(s)], c);
        }
        pc.relations.add(f_, v);
      }
    }
    std::vector<bool> piv(pc.monos.size(), false);
    for (auto p : pc.relations.pivots()) piv[p] = true;
    for (std::size_t i = 0; i < pc.monos.size(); ++i)
      if (!piv[i]) pc.basis.push_back(i);
    bool empty = pc.basis.empty();
    pieces_.push_back(std::move(pc));
    if (empty) {
      pieces_.pop_back();
      return;
    }
  }
  throw AlgebraError("quotient ring is not finite-dimensional below degree 64");
}

std::size_t QuotientRingModel::dim() const {
  std::size_t s = 0;
  for (const auto& p : pieces_) s += p.basis.size();
  return s;
}

std::vector<std::vector<unsigned>> QuotientRingModel::basis(unsigned d) const {
  std::vector<std::vector<unsigned>> out;
  if (d >= pieces_.size()) return out;
  for (auto i : pieces_[d].basis) out.push_back(pieces_[d].monos[i]);
  return out;
}

Vec QuotientRingModel::reduce_to_basis(unsigned d, const Vec& full) const {
  const Piece& pc = pieces_[d];
  Vec r = pc.relations.reduce(f_, full);
  Vec out(pc.basis.size());
  for (std::size_t i = 0; i < pc.basis.size(); ++i) out[i] = r[pc.basis[i]];
  return out;
}

Vec QuotientRingModel::times_var(unsigned d, const Vec& coords, std::size_t var) const {
  if (d + 1 >= pieces_.size()) return {};
  const Piece& src = pieces_[d];
  const Piece& dst = pieces_[d + 1];
  Vec full(dst.monos.size(), 0);
  for (std::size_t i = 0; i < src.basis.size(); ++i) {
    if (!coords[i]) continue;
    auto e = src.monos[src.basis[i]];
    e[var] += 1;
    auto it = std::find(dst.monos.begin(), dst.monos.end(), e);
    auto idx = static_cast<std::size_t>(it - dst.monos.begin());
    full[idx] = f_.add(full[idx], coords[i]);
  }
  return reduce_to_basis(d + 1, full);
}

std::size_t QuotientRingModel::socle_dim() const {
  std::size_t total_dim = 0;
  for (unsigned d = 0; d < pieces_.size(); ++d) {
    std::size_t n = pieces_[d].basis.size();
    if (d + 1 >= pieces_.size()) {
      total_dim += n;  // top degree is killed by every variable
      continue;
    }
    std::size_t m = pieces_[d + 1].basis.size();
    Mat big(m * vars_.size(), n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec unit(n, 0);
      unit[j] = 1;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        Vec img = times_var(d, unit, v);
        for (std::size_t i = 0; i < m; ++i) big.at(v * m + i, j) = img[i];
      }
    }
    total_dim += kernel(f_, big).size();
  }
  return total_dim;
}

QuotientRingModel model_s_mod_x_plus_y(const PrimeField& f) {
  return QuotientRingModel(f, {"x", "y"}, {"x^2*y", "x + y"});
}

QuotientRingModel model_sprime_mod_x_plus_y(const PrimeField& f) {
  // The E-infinity presentation of S' = S[z]: z^2 = zx = x^2, yz = 0, with x^2 y = 0.
  return QuotientRingModel(f, {"x", "y", "z"}, {"z^2 - z*x", "z*x - x^2", "y*z", "x^2*y", "x + y"});
}

QuotientRingModel model_residue_field(const PrimeField& f) { return QuotientRingModel(f, {"x"}, {"x"}); }

}  // namespace dinf
