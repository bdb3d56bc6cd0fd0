#pragma once

#include "mam/linalg.hpp"

namespace mam {

/// Pfaffian of a real skew-symmetric matrix via Householder reduction to
/// skew-tridiagonal form. Odd dimension gives 0. The input is symmetrized as
/// (A - A^T) / 2 first.
double pfaffian(const Mat& a);

/// Value of alpha ^ omega^k on the standard basis of R^{2k+1}, where alpha is a
/// covector and omega a skew matrix of that size:
///   k! * sum_i (-1)^i alpha_i Pf(omega without row/column i).
/// Throws StructuralError for even sizes or mismatched shapes.
double top_form_value(const Vec& alpha, const Mat& omega);

}  // namespace mam
