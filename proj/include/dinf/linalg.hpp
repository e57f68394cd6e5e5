#pragma once

#include <optional>
#include <vector>

#include "dinf/field.hpp"

namespace dinf {

using Vec = std::vector<Coeff>;

bool is_zero_vec(const Vec& v);

/// Dense row-major matrix over F_p. Sizes in this engine are tiny (tens of
/// rows), so nothing clever is done here.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  Vec apply(const PrimeField& f, const Vec& v) const;  // M * v
  Mat mul(const PrimeField& f, const Mat& o) const;
  Mat transpose() const;
  bool is_zero() const;
  bool operator==(const Mat& o) const = default;

  static Mat identity(std::size_t n);
  static Mat from_columns(std::size_t rows, const std::vector<Vec>& cols);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Coeff> a_;
};

std::size_t rank(const PrimeField& f, Mat m);

/// Basis of {v : M v = 0}.
std::vector<Vec> kernel(const PrimeField& f, const Mat& m);

/// Some x with M x = b, if one exists.
std::optional<Vec> solve(const PrimeField& f, const Mat& m, const Vec& b);

/// A subspace of F_p^n kept in reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }

  /// Returns true when v was not already in the span.
  bool add(const PrimeField& f, Vec v);
  void add_all(const PrimeField& f, const std::vector<Vec>& vs) {
    for (const auto& v : vs) add(f, v);
  }
  Vec reduce(const PrimeField& f, Vec v) const;
  bool contains(const PrimeField& f, const Vec& v) const { return is_zero_vec(reduce(f, v)); }
  bool contains(const PrimeField& f, const Subspace& o) const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }

  /// Pivot column of each basis row.
  const std::vector<std::size_t>& pivots() const { return piv_; }

 private:
  std::size_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

Subspace sum(const PrimeField& f, const Subspace& a, const Subspace& b);
Subspace intersect(const PrimeField& f, const Subspace& a, const Subspace& b);

}  // namespace dinf
