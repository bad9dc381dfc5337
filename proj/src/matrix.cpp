#include "cliff/matrix.hpp"

#include <cstdio>

namespace cliff {

double det(Mat<double> m) {
  const int n = m.dim();
  double d = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
    if (m.at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = m.at(r, col) / m.at(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return d;
}

std::string to_text(const Mat<QR2>& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += " ";
      out += to_text(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string to_text(const Mat<double>& m) {
  std::string out;
  char buf[64];
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += " ";
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace cliff
