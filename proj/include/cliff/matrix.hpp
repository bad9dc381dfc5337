#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliff/rational.hpp"

namespace cliff {

namespace detail {

inline QR2 conj_entry(const QR2& x) { return x; }
inline CQR2 conj_entry(const CQR2& x) { return x.conj(); }
inline double conj_entry(double x) { return x; }
inline std::complex<double> conj_entry(const std::complex<double>& x) { return std::conj(x); }

template <class T>
bool entry_zero(const T& x) {
  if constexpr (requires { x.is_zero(); })
    return x.is_zero();
  else
    return x == T(0);
}

template <class T>
T entry_inverse(const T& x) {
  if constexpr (requires { x.inverse(); })
    return x.inverse();
  else
    return T(1) / x;
}

}  // namespace detail

// Dense square matrix over an exact ring or over floats.  All exact
// operations never round.
template <class T>
class Mat {
 public:
  explicit Mat(int dim) : dim_(dim), a_(std::size_t(dim) * dim, T(0)) {
    if (dim <= 0) throw std::invalid_argument("Mat: dimension must be positive");
  }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = T(1);
    return m;
  }

  int dim() const { return dim_; }
  T& at(int i, int j) { return a_[std::size_t(i) * dim_ + j]; }
  const T& at(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }

  friend Mat operator+(const Mat& x, const Mat& y) {
    x.check_dim(y);
    Mat r(x.dim_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    x.check_dim(y);
    Mat r(x.dim_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
    return r;
  }
  friend Mat operator-(const Mat& x) {
    Mat r(x.dim_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = -x.a_[k];
    return r;
  }
  friend Mat operator*(const T& s, const Mat& x) {
    Mat r(x.dim_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = s * x.a_[k];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    x.check_dim(y);
    Mat r(x.dim_);
    for (int i = 0; i < x.dim_; ++i)
      for (int k = 0; k < x.dim_; ++k) {
        const T& f = x.at(i, k);
        if (detail::entry_zero(f)) continue;
        for (int j = 0; j < x.dim_; ++j) r.at(i, j) += f * y.at(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) { return x.dim_ == y.dim_ && x.a_ == y.a_; }

  Mat transposed() const {
    Mat r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  Mat conj_transposed() const {
    Mat r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(j, i) = detail::conj_entry(at(i, j));
    return r;
  }

  bool is_zero() const {
    for (const T& v : a_)
      if (!detail::entry_zero(v)) return false;
    return true;
  }

  // Block helpers for two-block representations (dim must be even).
  Mat top_left_block() const { return block(0, 0); }
  Mat bottom_right_block() const { return block(dim_ / 2, dim_ / 2); }
  Mat top_right_block() const { return block(0, dim_ / 2); }
  Mat bottom_left_block() const { return block(dim_ / 2, 0); }
  static Mat block_diag(const Mat& a, const Mat& b) {
    a.check_dim(b);
    Mat r(2 * a.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int j = 0; j < a.dim_; ++j) {
        r.at(i, j) = a.at(i, j);
        r.at(i + a.dim_, j + a.dim_) = b.at(i, j);
      }
    return r;
  }

 private:
  Mat block(int r0, int c0) const {
    if (dim_ % 2 != 0) throw std::invalid_argument("Mat: block access needs even dimension");
    Mat r(dim_ / 2);
    for (int i = 0; i < dim_ / 2; ++i)
      for (int j = 0; j < dim_ / 2; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }
  void check_dim(const Mat& y) const {
    if (dim_ != y.dim_) throw std::invalid_argument("Mat: dimension mismatch");
  }

  int dim_;
  std::vector<T> a_;
};

// Exact Gauss-Jordan inverse over a field.  Pivots on the first nonzero
// entry; throws on a singular input.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
  int n = m.dim();
  Mat<T> a = m;
  Mat<T> inv = Mat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!detail::entry_zero(a.at(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("inverse: singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    T scale = detail::entry_inverse(a.at(col, col));
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = scale * a.at(col, j);
      inv.at(col, j) = scale * inv.at(col, j);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || detail::entry_zero(a.at(r, col))) continue;
      T f = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = a.at(r, j) - f * a.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// Rank of a list of row vectors over an exact field.
template <class T>
int rank_of_rows(std::vector<std::vector<T>> rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t lead = 0;
  for (std::size_t r = 0; r < rows.size() && lead < cols; ++lead) {
    std::size_t pivot = r;
    while (pivot < rows.size() && detail::entry_zero(rows[pivot][lead])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    T scale = detail::entry_inverse(rows[r][lead]);
    for (std::size_t j = lead; j < cols; ++j) rows[r][j] = scale * rows[r][j];
    for (std::size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == r || detail::entry_zero(rows[rr][lead])) continue;
      T f = rows[rr][lead];
      for (std::size_t j = lead; j < cols; ++j) rows[rr][j] = rows[rr][j] - f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

// Canonical involution targets: the symplectic block matrix and the split
// diagonal.  Omega is antisymmetric with Omega^2 = -1; J is symmetric,
// traceless, with J^2 = 1.
enum class CanonicalForm { Omega, J };

template <class T = QR2>
Mat<T> canonical_matrix(CanonicalForm kind, int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("canonical_matrix: dimension must be positive and even");
  Mat<T> m(dim);
  int h = dim / 2;
  if (kind == CanonicalForm::Omega) {
    for (int i = 0; i < h; ++i) {
      m.at(i, i + h) = T(-1);
      m.at(i + h, i) = T(1);
    }
  } else {
    for (int i = 0; i < h; ++i) {
      m.at(i, i) = T(1);
      m.at(i + h, i + h) = T(-1);
    }
  }
  return m;
}

inline Mat<double> to_float(const Mat<QR2>& m) {
  Mat<double> r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r.at(i, j) = to_double(m.at(i, j));
  return r;
}

inline Mat<std::complex<double>> to_float(const Mat<CQR2>& m) {
  Mat<std::complex<double>> r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      r.at(i, j) = {to_double(m.at(i, j).re), to_double(m.at(i, j).im)};
  return r;
}

inline Mat<CQR2> complexified(const Mat<QR2>& m) {
  Mat<CQR2> r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r.at(i, j) = CQR2(m.at(i, j));
  return r;
}

inline double max_abs(const Mat<double>& m) {
  double v = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) v = std::max(v, std::abs(m.at(i, j)));
  return v;
}

inline double max_abs(const Mat<std::complex<double>>& m) {
  double v = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) v = std::max(v, std::abs(m.at(i, j)));
  return v;
}

// Determinant with partial pivoting; used for float invertibility checks.
double det(Mat<double> m);

// One row per line, entries separated by single spaces.
std::string to_text(const Mat<QR2>& m);
std::string to_text(const Mat<double>& m);

}  // namespace cliff
