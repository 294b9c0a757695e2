#include "gradstab/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace gradstab {

Mat Mat::identity(const BaseRing& ring, std::size_t n) {
  Mat m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, RingElem::one(ring));
  return m;
}

Mat Mat::from_rows(const BaseRing& ring,
                   const std::vector<std::vector<RingElem>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Mat m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw InternalError("matrix product shape mismatch");
  Mat r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const RingElem& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.set(i, j, r.at(i, j) + a * b);
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix sum shape mismatch");
  Mat r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix diff shape mismatch");
  Mat r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Mat Mat::transpose() const {
  Mat r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Mat Mat::scaled(const RingElem& c) const {
  Mat r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_) throw InternalError("hstack row mismatch");
  Mat r(a.ring_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) r.set(i, j, a.at(i, j));
    for (std::size_t j = 0; j < b.cols_; ++j) r.set(i, a.cols_ + j, b.at(i, j));
  }
  return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols_ != b.cols_) throw InternalError("vstack col mismatch");
  Mat r(a.ring_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) r.set(a.rows_ + i, j, b.at(i, j));
  return r;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  Mat r(a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) {
          if (b.at(k, l).is_zero()) continue;
          r.set(i * b.rows_ + k, j * b.cols_ + l, a.at(i, j) * b.at(k, l));
        }
    }
  return r;
}

Mat Mat::col(std::size_t j) const {
  Mat r(ring_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r.set(i, 0, at(i, j));
  return r;
}

Mat Mat::first_rows(std::size_t k) const {
  Mat r(ring_, k, cols_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  return r;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat r(ring_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, at(idx[i], j));
  return r;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat r(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r.set(i, j, at(i, idx[j]));
  return r;
}

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const RingElem& x) { return x.is_zero(); });
}

std::string Mat::render() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j).render();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat Mat::parse(const BaseRing& ring, std::string_view text) {
  // Row-major bracketed lists of ring-element strings.
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c)
      throw ValidationError(std::string("matrix parse: expected '") + c + "'");
    ++pos;
  };
  expect('[');
  std::vector<std::vector<RingElem>> rows;
  skip();
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    return Mat(ring, 0, 0);
  }
  for (;;) {
    expect('[');
    std::vector<RingElem> row;
    skip();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
    } else {
      for (;;) {
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size() &&
               (depth > 0 || (text[pos] != ',' && text[pos] != ']'))) {
          if (text[pos] == '(') ++depth;
          if (text[pos] == ')') --depth;
          ++pos;
        }
        row.push_back(RingElem::parse(ring, text.substr(start, pos - start)));
        if (pos >= text.size()) throw ValidationError("matrix parse: unterminated row");
        if (text[pos] == ']') {
          ++pos;
          break;
        }
        ++pos;  // comma
      }
    }
    rows.push_back(std::move(row));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    expect(']');
    break;
  }
  return from_rows(ring, rows);
}

void Mat::swap_rows(std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(e_[i * cols_ + j], e_[k * cols_ + j]);
}

void Mat::swap_cols(std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(e_[i * cols_ + j], e_[i * cols_ + k]);
}

void Mat::row_axpy(std::size_t i, std::size_t k, const RingElem& c) {
  for (std::size_t j = 0; j < cols_; ++j)
    e_[i * cols_ + j] = e_[i * cols_ + j] + c * e_[k * cols_ + j];
}

void Mat::col_axpy(std::size_t j, std::size_t k, const RingElem& c) {
  for (std::size_t i = 0; i < rows_; ++i)
    e_[i * cols_ + j] = e_[i * cols_ + j] + c * e_[i * cols_ + k];
}

void Mat::scale_row(std::size_t i, const RingElem& c) {
  for (std::size_t j = 0; j < cols_; ++j) e_[i * cols_ + j] = e_[i * cols_ + j] * c;
}

void Mat::scale_col(std::size_t j, const RingElem& c) {
  for (std::size_t i = 0; i < rows_; ++i) e_[i * cols_ + j] = e_[i * cols_ + j] * c;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

/// Mutable bundle of the working matrix with tracked transforms.
struct SnfWork {
  Mat d, u, uinv, v, vinv;

  explicit SnfWork(const Mat& m)
      : d(m),
        u(Mat::identity(m.ring(), m.rows())),
        uinv(Mat::identity(m.ring(), m.rows())),
        v(Mat::identity(m.ring(), m.cols())),
        vinv(Mat::identity(m.ring(), m.cols())) {}

  void swap_rows(std::size_t i, std::size_t k) {
    d.swap_rows(i, k);
    u.swap_rows(i, k);
    uinv.swap_cols(i, k);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    d.swap_cols(j, k);
    v.swap_cols(j, k);
    vinv.swap_rows(j, k);
  }
  // row i -= q * row k
  void row_sub(std::size_t i, std::size_t k, const RingElem& q) {
    RingElem nq = -q;
    d.row_axpy(i, k, nq);
    u.row_axpy(i, k, nq);
    uinv.col_axpy(k, i, q);
  }
  // col j -= q * col k
  void col_sub(std::size_t j, std::size_t k, const RingElem& q) {
    RingElem nq = -q;
    d.col_axpy(j, k, nq);
    v.col_axpy(j, k, nq);
    vinv.row_axpy(k, j, q);
  }
  void scale_row(std::size_t i, const RingElem& unit) {
    d.scale_row(i, unit);
    u.scale_row(i, unit);
    uinv.scale_col(i, unit_inverse(unit));
  }
};

/// Diagonalize the block at (t..), returning false if it is all zero.
bool clear_pivot(SnfWork& w, std::size_t t) {
  std::size_t rows = w.d.rows(), cols = w.d.cols();
  // deterministic pivot: minimal (degree, row, col) among nonzero entries
  bool found = false;
  std::size_t pi = 0, pj = 0;
  int best = -1;
  for (std::size_t i = t; i < rows; ++i)
    for (std::size_t j = t; j < cols; ++j) {
      const RingElem& x = w.d.at(i, j);
      if (x.is_zero()) continue;
      if (!found || x.degree() < best) {
        found = true;
        best = x.degree();
        pi = i;
        pj = j;
      }
    }
  if (!found) return false;
  w.swap_rows(t, pi);
  w.swap_cols(t, pj);

  for (;;) {
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (w.d.at(i, t).is_zero()) continue;
      auto dm = divmod(w.d.at(i, t), w.d.at(t, t));
      w.row_sub(i, t, dm.quotient);
      if (!w.d.at(i, t).is_zero()) {
        w.swap_rows(t, i);  // strictly smaller pivot degree
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (w.d.at(t, j).is_zero()) continue;
      auto dm = divmod(w.d.at(t, j), w.d.at(t, t));
      w.col_sub(j, t, dm.quotient);
      if (!w.d.at(t, j).is_zero()) {
        w.swap_cols(t, j);
        clean = false;
        break;
      }
    }
    if (clean) return true;
  }
}

}  // namespace

SnfResult smith_normal_form(const Mat& m) {
  SnfWork w(m);
  std::size_t n = std::min(m.rows(), m.cols());
  std::size_t rank = 0;

  for (;;) {
    rank = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (!clear_pivot(w, t)) break;
      ++rank;
    }
    // enforce the divisibility chain; a failed pair is merged and the
    // diagonalization rerun from that position
    bool fixed = true;
    for (std::size_t k = 0; k + 1 < rank; ++k) {
      if (!divmod(w.d.at(k + 1, k + 1), w.d.at(k, k)).remainder.is_zero()) {
        w.col_sub(k, k + 1, -RingElem::one(m.ring()));  // col k += col k+1
        fixed = false;
        break;
      }
    }
    if (fixed) break;
  }

  for (std::size_t t = 0; t < rank; ++t) {
    const RingElem& d = w.d.at(t, t);
    if (!d.is_monic())
      w.scale_row(t, unit_inverse(RingElem::constant(m.ring(), d.leading_coeff())));
  }

  SnfResult res{std::move(w.u), std::move(w.uinv), std::move(w.v), std::move(w.vinv),
                std::move(w.d), rank};
#ifdef GRADSTAB_INTERNAL_CHECKS
  verify_snf(m, res);
#endif
  return res;
}

void verify_snf(const Mat& m, const SnfResult& s) {
  if (!(s.u * m * s.v == s.d)) throw InternalError("SNF certificate failed: u*m*v != d");
  if (!(s.u * s.uinv == Mat::identity(m.ring(), m.rows())))
    throw InternalError("SNF certificate failed: u not unimodular");
  if (!(s.v * s.vinv == Mat::identity(m.ring(), m.cols())))
    throw InternalError("SNF certificate failed: v not unimodular");
  std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !s.d.at(i, j).is_zero())
        throw InternalError("SNF certificate failed: d not diagonal");
  for (std::size_t t = 0; t < n; ++t) {
    const RingElem& x = s.d.at(t, t);
    if (t < s.rank) {
      if (x.is_zero() || !x.is_monic())
        throw InternalError("SNF certificate failed: diagonal not monic up to rank");
    } else if (!x.is_zero()) {
      throw InternalError("SNF certificate failed: nonzero entry past rank");
    }
  }
  for (std::size_t t = 0; t + 1 < s.rank; ++t)
    if (!divmod(s.d.at(t + 1, t + 1), s.d.at(t, t)).remainder.is_zero())
      throw InternalError("SNF certificate failed: divisibility chain broken");
}

std::vector<RingElem> SnfResult::diagonal() const {
  std::vector<RingElem> out;
  for (std::size_t t = 0; t < rank; ++t) out.push_back(d.at(t, t));
  return out;
}

std::vector<RingElem> SnfResult::invariant_factors() const {
  std::vector<RingElem> out;
  for (std::size_t t = 0; t < rank; ++t)
    if (!d.at(t, t).is_unit()) out.push_back(d.at(t, t));
  return out;
}

std::optional<Mat> solve(const SnfResult& s, const Mat& b) {
  if (b.rows() != s.d.rows()) throw InternalError("solve: shape mismatch");
  Mat c = s.u * b;
  Mat y(b.ring(), s.d.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < s.d.rows(); ++i) {
      if (i < s.rank) {
        auto dm = divmod(c.at(i, j), s.d.at(i, i));
        if (!dm.remainder.is_zero()) return std::nullopt;
        y.set(i, j, dm.quotient);
      } else if (!c.at(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  }
  return s.v * y;
}

Mat kernel_basis(const SnfResult& s) {
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < s.d.cols(); ++j) idx.push_back(j);
  return s.v.select_cols(idx);
}

}  // namespace gradstab
