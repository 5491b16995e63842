#include "netgame/spectrum.hpp"

#include <cmath>

namespace netgame {

Spectrum spectrum(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() < 1) {
    throw NotSymmetric("matrix must be square");
  }
  const int n = static_cast<int>(g.rows());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw NotSymmetric("matrix differs from its transpose beyond 1e-12");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      (g + g.transpose()) * 0.5);
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition failed");
  }

  Spectrum sp;
  sp.eigenvalues.resize(n);
  sp.eigenvectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int l = 0; l < n; ++l) {
    sp.eigenvalues[l] = es.eigenvalues()[n - 1 - l];
    sp.eigenvectors.col(l) = es.eigenvectors().col(n - 1 - l);
  }
  // Sign convention: largest-magnitude entry nonnegative, ties to the
  // lowest index.
  for (int l = 0; l < n; ++l) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(sp.eigenvectors(i, l));
      if (m > best) {
        best = m;
        arg = i;
      }
    }
    if (sp.eigenvectors(arg, l) < 0.0) {
      sp.eigenvectors.col(l) = -sp.eigenvectors.col(l);
    }
  }
  if (n >= 2) {
    const double top_gap = sp.eigenvalues[0] - sp.eigenvalues[1];
    const double bottom_gap = sp.eigenvalues[n - 2] - sp.eigenvalues[n - 1];
    sp.multiplicity_warning =
        top_gap < kGapTolerance || bottom_gap < kGapTolerance;
  }
  return sp;
}

bool top_eigen_degenerate(double phi, const Spectrum& sp) {
  const int n = static_cast<int>(sp.eigenvalues.size());
  if (n < 2) return false;
  if (phi >= 0) {
    return sp.eigenvalues[0] - sp.eigenvalues[1] < kGapTolerance;
  }
  return sp.eigenvalues[n - 2] - sp.eigenvalues[n - 1] < kGapTolerance;
}

}  // namespace netgame
