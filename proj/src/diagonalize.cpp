#include "cliff/diagonalize.hpp"

#include <sstream>
#include <vector>

namespace cliff {

namespace {

struct Monomial {
  std::vector<int> row;   // row[j]: row index of the nonzero in column j
  std::vector<int> sign;  // its value, +1 or -1
};

// Decompose N as N e_j = sign[j] * e_{row[j]}; rejects everything that is not
// a +-1 signed permutation.
Monomial decompose_monomial(const Mat<QR2>& n) {
  Monomial m;
  m.row.assign(n.dim(), -1);
  m.sign.assign(n.dim(), 0);
  std::vector<int> row_used(n.dim(), 0);
  for (int j = 0; j < n.dim(); ++j) {
    for (int i = 0; i < n.dim(); ++i) {
      const QR2& v = n.at(i, j);
      if (v.is_zero()) continue;
      if (m.row[j] != -1 || !(v == QR2(1) || v == QR2(-1)))
        throw std::invalid_argument("involution_diagonalizer: matrix is not a signed permutation");
      m.row[j] = i;
      m.sign[j] = v == QR2(1) ? 1 : -1;
    }
    if (m.row[j] == -1)
      throw std::invalid_argument("involution_diagonalizer: matrix is not a signed permutation");
    if (row_used[m.row[j]]++)
      throw std::invalid_argument("involution_diagonalizer: matrix is not a signed permutation");
  }
  return m;
}

}  // namespace

Mat<QR2> involution_diagonalizer(const Mat<QR2>& n, CanonicalForm target) {
  const int dim = n.dim();
  if (dim % 2 != 0)
    throw std::invalid_argument("involution_diagonalizer: dimension must be even");
  Monomial mono = decompose_monomial(n);

  Mat<QR2> sq = n * n;
  const QR2 want = target == CanonicalForm::J ? QR2(1) : QR2(-1);
  if (!(sq == want * Mat<QR2>::identity(dim))) {
    std::ostringstream os;
    os << "involution_diagonalizer: N^2 != " << (target == CanonicalForm::J ? "+1" : "-1");
    throw std::invalid_argument(os.str());
  }

  QR2 trace(0);
  for (int i = 0; i < dim; ++i) trace += n.at(i, i);
  if (!trace.is_zero())
    throw std::invalid_argument("involution_diagonalizer: trace must vanish");

  Mat<QR2> t(dim);
  const Rational half(1, 2);
  const QR2 inv_sqrt2(0, half);  // 1/sqrt(2) = (1/2) sqrt(2)

  if (target == CanonicalForm::J) {
    std::vector<int> plus_cols, minus_cols;  // column recipes; <0 encodes pairs
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> seen(dim, 0);
    for (int j = 0; j < dim; ++j) {
      if (seen[j]) continue;
      seen[j] = 1;
      int i = mono.row[j];
      if (i == j) {
        (mono.sign[j] > 0 ? plus_cols : minus_cols).push_back(j);
      } else {
        seen[i] = 1;
        // N^2 = 1 forces the two cycle signs to agree.
        pairs.emplace_back(j, i);
        plus_cols.push_back(-int(pairs.size()));
        minus_cols.push_back(-int(pairs.size()));
      }
    }
    if (plus_cols.size() != minus_cols.size())
      throw std::invalid_argument("involution_diagonalizer: unbalanced spectrum");
    auto place = [&](const std::vector<int>& recipes, int offset, int eig) {
      for (std::size_t k = 0; k < recipes.size(); ++k) {
        int col = offset + int(k);
        int rec = recipes[k];
        if (rec >= 0) {
          t.at(rec, col) = QR2(1);
        } else {
          auto [i, j] = pairs[std::size_t(-rec) - 1];
          int s = mono.sign[i];  // N e_i = s e_j, N e_j = s e_i
          // (e_i + eig*s*e_j)/sqrt2 is the eigenvector of eigenvalue eig.
          t.at(i, col) = inv_sqrt2;
          t.at(j, col) = QR2(0, half * (eig * s));
        }
      }
    };
    place(plus_cols, 0, 1);
    place(minus_cols, dim / 2, -1);
  } else {
    // N^2 = -1: the permutation is a product of 2-cycles with opposite signs.
    std::vector<std::pair<int, int>> pairs;  // (u, v) with N e_u = +e_v
    std::vector<char> seen(dim, 0);
    for (int j = 0; j < dim; ++j) {
      if (seen[j]) continue;
      int i = mono.row[j];
      if (i == j)
        throw std::invalid_argument("involution_diagonalizer: fixed point with N^2 = -1");
      seen[j] = seen[i] = 1;
      if (mono.sign[j] > 0)
        pairs.emplace_back(j, i);
      else
        pairs.emplace_back(i, j);
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      t.at(pairs[k].first, int(k)) = QR2(1);
      t.at(pairs[k].second, dim / 2 + int(k)) = QR2(1);
    }
  }

  // Exactness guarantees: T is orthogonal and conjugation lands on the target.
  if (!(t.transposed() * t == Mat<QR2>::identity(dim)))
    throw std::logic_error("involution_diagonalizer: produced a non-orthogonal T");
  if (!(t.transposed() * n * t == canonical_matrix(target, dim)))
    throw std::logic_error("involution_diagonalizer: conjugation missed the target form");
  return t;
}

}  // namespace cliff
