#include "netgame/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netgame {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kBoxTol = 1e-12;
}  // namespace

Network::Network(Eigen::MatrixXd w, double wbar) : w_(std::move(w)), wbar_(wbar) {
  if (w_.rows() != w_.cols() || w_.rows() < 1) {
    throw BadSize("weight matrix must be square and nonempty");
  }
  if (!(wbar_ > 0.0)) {
    throw BadSize("wbar must be positive");
  }
  const int n = static_cast<int>(w_.rows());
  for (int i = 0; i < n; ++i) {
    if (w_(i, i) != 0.0) {
      throw NonzeroDiagonal("nonzero diagonal at index " + std::to_string(i));
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(w_(i, j) - w_(j, i)) > kSymTol) {
        throw Asymmetric("asymmetric entry at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
  const double lo = w_.minCoeff();
  const double hi = w_.maxCoeff();
  if (lo < 0.0 || hi > wbar_ + kBoxTol) {
    throw OutOfBox("entry outside [0, wbar]: range [" + std::to_string(lo) +
                   ", " + std::to_string(hi) + "] with wbar " +
                   std::to_string(wbar_));
  }
  // Absorb file-format rounding: symmetrize, then clamp back into the box.
  w_ = ((w_ + w_.transpose()) * 0.5).eval();
  w_ = w_.cwiseMax(0.0).cwiseMin(wbar_);
  w_.diagonal().setZero();
}

Network validate_network(const Eigen::MatrixXd& w, double wbar) {
  return Network(w, wbar);
}

Network make_complete(int n, double wbar) {
  if (n < 1) throw BadSize("complete graph needs n >= 1");
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(n, n, wbar);
  w.diagonal().setZero();
  return Network(std::move(w), wbar);
}

Network make_complete_bipartite(int p, int q, double wbar) {
  if (p < 1 || q < 1) throw BadSize("bipartite sides must be nonempty");
  const int n = p + q;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w.topRightCorner(p, q).setConstant(wbar);
  w.bottomLeftCorner(q, p).setConstant(wbar);
  return Network(std::move(w), wbar);
}

Network make_equal_centrality_extremal(int n, double wbar) {
  if (n < 5 || n % 2 == 0) {
    throw BadSize("construction requires odd n >= 5");
  }
  const int p = (n + 1) / 2;  // empty block
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const double inner = wbar * 2.0 / static_cast<double>(n - 3);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (i < p && j >= p) {
        w(i, j) = w(j, i) = wbar;
      } else if (i >= p && j >= p) {
        w(i, j) = w(j, i) = inner;
      }
    }
  }
  return Network(std::move(w), wbar);
}

}  // namespace netgame
