#pragma once

#include <cmath>
#include <stdexcept>

#include "cliff/matrix.hpp"

namespace cliff {

// Scaling-and-squaring Taylor exponential.  The series is truncated once the
// running term drops below the tolerance budget assigned to the scaled
// matrix; the result is then squared back up.
template <class T>
Mat<T> mat_exp(const Mat<T>& a, double tol = 1e-13) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(std::abs(a.at(i, j))))
        throw std::invalid_argument("mat_exp: nonfinite entry");

  double norm = max_abs(a);
  int s = 0;
  while (norm > 0.25 && s < 60) {
    norm /= 2.0;
    ++s;
  }
  Mat<T> scaled = T(std::ldexp(1.0, -s)) * a;

  double budget = std::max(tol * std::ldexp(1.0, -s), 1e-300);
  Mat<T> sum = Mat<T>::identity(n);
  Mat<T> term = Mat<T>::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = T(1.0 / k) * (term * scaled);
    sum = sum + term;
    if (max_abs(term) < budget) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

}  // namespace cliff
