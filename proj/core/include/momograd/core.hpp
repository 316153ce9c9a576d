#pragma once

#include "momograd/types.hpp"

namespace momograd {

/// Worst-case directional derivative psi(x, d) = max_i <grad F_i(x), d>.
/// d is a common descent direction at x exactly when psi < 0.
inline double psi(const Jacobian& jf, const Vector& d) {
  if (jf.cols() != d.size())
    throw std::invalid_argument("psi: direction length does not match Jacobian columns");
  if (jf.rows() == 0) throw std::invalid_argument("psi: empty Jacobian");
  return (jf * d).maxCoeff();
}

/// Row-max matrix norm max_i ||row i||_2. This is the operator norm pairing
/// the Euclidean norm on directions with the max over objectives, so
/// |psi(x, d)| <= row_max_norm(JF(x)) * ||d|| for every d.
inline double row_max_norm(const Jacobian& jf) {
  if (jf.rows() == 0) throw std::invalid_argument("row_max_norm: empty matrix");
  return jf.rowwise().norm().maxCoeff();
}

/// Guarded reciprocal: 0 maps to 0, anything else to 1/chi. Satisfies
/// chi * chi_plus(chi) <= 1 with equality iff chi != 0.
inline double chi_plus(double chi) { return chi == 0.0 ? 0.0 : 1.0 / chi; }

/// Minimization dominance: a <= b componentwise with at least one strict
/// inequality. Irreflexive by construction; equal vectors never dominate.
inline bool dominates(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: objective vectors of different lengths");
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

}  // namespace momograd
