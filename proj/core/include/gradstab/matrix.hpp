#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gradstab/base_ring.hpp"

namespace gradstab {

/// Dense matrix over the coefficient ring. Row-major; zero-dimensional
/// matrices are legal and arise from empty presentations.
class Mat {
public:
  Mat(BaseRing ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        e_(rows * cols, RingElem::zero(ring_)) {}

  static Mat identity(const BaseRing& ring, std::size_t n);
  static Mat from_rows(const BaseRing& ring,
                       const std::vector<std::vector<RingElem>>& rows);

  const BaseRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const RingElem& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, RingElem v) { e_[i * cols_ + j] = std::move(v); }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat transpose() const;
  Mat scaled(const RingElem& c) const;

  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  static Mat kron(const Mat& a, const Mat& b);

  Mat col(std::size_t j) const;
  Mat first_rows(std::size_t k) const;
  /// Select a subset of rows, in the given order.
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;

  bool is_zero() const;
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string render() const;  // [[...], [...]]
  static Mat parse(const BaseRing& ring, std::string_view text);

  void swap_rows(std::size_t i, std::size_t k);
  void swap_cols(std::size_t j, std::size_t k);
  /// row i += c * row k
  void row_axpy(std::size_t i, std::size_t k, const RingElem& c);
  /// col j += c * col k
  void col_axpy(std::size_t j, std::size_t k, const RingElem& c);
  void scale_row(std::size_t i, const RingElem& c);
  void scale_col(std::size_t j, const RingElem& c);

private:
  BaseRing ring_;
  std::size_t rows_, cols_;
  std::vector<RingElem> e_;
};

/// Smith normal form u * m * v = d with unimodular u, v (inverses tracked),
/// monic diagonal entries and divisibility d_1 | d_2 | ... .
struct SnfResult {
  Mat u, uinv, v, vinv, d;
  std::size_t rank = 0;

  /// Nonzero diagonal entries (monic; units render as 1).
  std::vector<RingElem> diagonal() const;
  /// Nonunit nonzero diagonal entries.
  std::vector<RingElem> invariant_factors() const;
};

SnfResult smith_normal_form(const Mat& m);

/// Checks u*m*v == d, u*uinv == 1, v*vinv == 1, monic diagonal, divisibility
/// chain. Throws InternalError when violated.
void verify_snf(const Mat& m, const SnfResult& s);

/// Solve m * x = b (b may have several columns). Returns std::nullopt when any
/// column is not in the column span.
std::optional<Mat> solve(const SnfResult& snf_of_m, const Mat& b);

/// Free basis of ker(m) as columns (n x (n - rank)).
Mat kernel_basis(const SnfResult& snf_of_m);

}  // namespace gradstab
