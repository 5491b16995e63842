#pragma once

#include <Eigen/Dense>

#include "netgame/errors.hpp"

namespace netgame {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
/// Each eigenvector has unit norm and its largest-magnitude entry is
/// nonnegative (ties broken by lowest index), so outputs are reproducible
/// across eigensolver backends.
struct Spectrum {
  Eigen::VectorXd eigenvalues;   // descending: eigenvalues[0] is the largest
  Eigen::MatrixXd eigenvectors;  // column l matches eigenvalues[l]
  bool multiplicity_warning = false;  // set when either end of the spectrum
                                      // has a gap below kGapTolerance
};

inline constexpr double kGapTolerance = 1e-8;

/// Full eigendecomposition with the sign convention above.
/// Throws NotSymmetric if the input differs from its transpose beyond 1e-12.
Spectrum spectrum(const Eigen::MatrixXd& g);

/// Index into a descending Spectrum of the eigenvalue maximizing phi*lambda:
/// 0 for phi >= 0, n-1 for phi < 0.
inline int top_eigen_index(double phi, int n) { return phi >= 0 ? 0 : n - 1; }

/// Largest eigenvalue of phi*g given the spectrum of g.
inline double top_eigenvalue(double phi, const Spectrum& sp) {
  const int n = static_cast<int>(sp.eigenvalues.size());
  return phi * sp.eigenvalues[top_eigen_index(phi, n)];
}

/// True when the eigenvalue relevant for phi (largest for phi>0, smallest
/// for phi<0) is within kGapTolerance of its neighbor.
bool top_eigen_degenerate(double phi, const Spectrum& sp);

}  // namespace netgame
