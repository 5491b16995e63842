#pragma once

#include <Eigen/Dense>

#include "netgame/errors.hpp"

namespace netgame {

/// A symmetric, nonnegative, zero-diagonal weight matrix with per-link cap
/// wbar. Immutable after construction; safe to share across threads.
class Network {
 public:
  /// Validates and stores the weight matrix. Input must be square,
  /// symmetric to 1e-12, zero on the diagonal, and entrywise inside
  /// [0, wbar + 1e-12]. After validation the matrix is symmetrized as
  /// (w + w^T)/2 and clamped into [0, wbar].
  Network(Eigen::MatrixXd w, double wbar);

  int size() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& weights() const { return w_; }
  double wbar() const { return wbar_; }
  double operator()(int i, int j) const { return w_(i, j); }

 private:
  Eigen::MatrixXd w_;
  double wbar_;
};

/// Checks the Network invariants and returns the (symmetrized, clamped)
/// network. Throws Asymmetric, NonzeroDiagonal or OutOfBox.
Network validate_network(const Eigen::MatrixXd& w, double wbar);

/// Complete graph on n vertices with every link at wbar.
Network make_complete(int n, double wbar);

/// Complete bipartite graph with sides of size p and q; cross links at wbar.
Network make_complete_bipartite(int p, int q, double wbar);

/// For odd n >= 5: the network minimizing the smallest eigenvalue among
/// networks whose last eigenvector has entries of equal magnitude. Vertices
/// {0..(n-1)/2} form an empty block, the remaining (n-1)/2 vertices are
/// linked at wbar*2/(n-3) among themselves, and all cross links are wbar.
/// Its smallest eigenvalue is -wbar*(n-1)/2.
Network make_equal_centrality_extremal(int n, double wbar);

}  // namespace netgame
