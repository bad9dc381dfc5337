#pragma once

#include "cliff/matrix.hpp"

namespace cliff {

// Exact spectral normalizer for orthogonal signed-permutation matrices.
//
// Given a monomial N with integer entries, zero trace and N^2 = +1 (target J)
// or N^2 = -1 (target Omega), returns an exact orthogonal T over Q(sqrt 2)
// with T^{-1} N T equal to the requested canonical form.  Fixed points of the
// underlying permutation become diagonal slots; 2-cycles contribute
// (e_i +- e_j)/sqrt(2) eigenvector columns (J) or aligned column pairs
// (Omega).  Throws if any precondition fails.
Mat<QR2> involution_diagonalizer(const Mat<QR2>& n, CanonicalForm target);

}  // namespace cliff
