#include "dinf/linalg.hpp"

#include <algorithm>

namespace dinf {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw AlgebraError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 30)) throw AlgebraError("modulus too large");
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const {
  Coeff r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) throw AlgebraError("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

Vec Mat::row(std::size_t r) const {
  return Vec(a_.begin() + static_cast<long>(r * cols_), a_.begin() + static_cast<long>((r + 1) * cols_));
}

Vec Mat::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vec Mat::apply(const PrimeField& f, const Vec& v) const {
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Coeff s = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) && v[c]) s = f.add(s, f.mul(at(r, c), v[c]));
    out[r] = s;
  }
  return out;
}

Mat Mat::mul(const PrimeField& f, const Mat& o) const {
  Mat out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      Coeff a = at(r, k);
      if (!a) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        if (o.at(k, c)) out.at(r, c) = f.add(out.at(r, c), f.mul(a, o.at(k, c)));
    }
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool Mat::is_zero() const { return is_zero_vec(a_); }

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  return m;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_inplace(const PrimeField& f, Mat& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(p, k), m.at(r, k));
    Coeff iv = f.inv(m.at(r, c));
    for (std::size_t k = 0; k < m.cols(); ++k) m.at(r, k) = f.mul(m.at(r, k), iv);
    for (std::size_t q = 0; q < m.rows(); ++q) {
      if (q == r || m.at(q, c) == 0) continue;
      Coeff fac = m.at(q, c);
      for (std::size_t k = 0; k < m.cols(); ++k)
        if (m.at(r, k)) m.at(q, k) = f.sub(m.at(q, k), f.mul(fac, m.at(r, k)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(const PrimeField& f, Mat m) { return rref_inplace(f, m).size(); }

std::vector<Vec> kernel(const PrimeField& f, const Mat& m) {
  Mat a = m;
  auto piv = rref_inplace(f, a);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(a.at(i, free));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const PrimeField& f, const Mat& m, const Vec& b) {
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  auto piv = rref_inplace(f, aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
  return x;
}

Vec Subspace::reduce(const PrimeField& f, Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Coeff c = v[piv_[i]];
    if (!c) continue;
    const Vec& r = rows_[i];
    for (std::size_t k = piv_[i]; k < n_; ++k)
      if (r[k]) v[k] = f.sub(v[k], f.mul(c, r[k]));
  }
  return v;
}

bool Subspace::add(const PrimeField& f, Vec v) {
  v = reduce(f, std::move(v));
  std::size_t p = 0;
  while (p < n_ && v[p] == 0) ++p;
  if (p == n_) return false;
  Coeff iv = f.inv(v[p]);
  for (auto& c : v) c = f.mul(c, iv);
  for (auto& r : rows_) {
    Coeff c = r[p];
    if (!c) continue;
    for (std::size_t k = p; k < n_; ++k)
      if (v[k]) r[k] = f.sub(r[k], f.mul(c, v[k]));
  }
  auto it = std::lower_bound(piv_.begin(), piv_.end(), p);
  auto idx = it - piv_.begin();
  piv_.insert(it, p);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

bool Subspace::contains(const PrimeField& f, const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(f, v); });
}

Subspace sum(const PrimeField& f, const Subspace& a, const Subspace& b) {
  Subspace s = a;
  s.add_all(f, b.basis());
  return s;
}

Subspace intersect(const PrimeField& f, const Subspace& a, const Subspace& b) {
  // Dependencies sum_i c_i a_i - sum_j d_j b_j = 0 give the intersection.
  const std::size_t n = a.ambient();
  Subspace out(n);
  if (a.dim() == 0 || b.dim() == 0) return out;
  std::vector<Vec> cols;
  for (const auto& v : a.basis()) cols.push_back(v);
  for (const auto& v : b.basis()) cols.push_back(v);
  Mat m = Mat::from_columns(n, cols);
  for (const auto& dep : kernel(f, m)) {
    Vec w(n, 0);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (dep[i])
        for (std::size_t k = 0; k < n; ++k) w[k] = f.add(w[k], f.mul(dep[i], a.basis()[i][k]));
    out.add(f, w);
  }
  return out;
}

}  // namespace dinf
