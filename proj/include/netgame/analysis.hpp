#pragma once

#include <Eigen/Dense>
#include <vector>

#include "netgame/game.hpp"

namespace netgame {

/// Theil T inequality index of a payoff vector together with payoff shares.
struct InequalityReport {
  enum class Convention { direct, eigencentrality_limit };
  double theil = 0.0;            // (1/n) sum (p_i/pbar) ln(p_i/pbar), >= 0
  Eigen::VectorXd payoff_shares;  // p_i / sum p
  Convention convention_used = Convention::direct;
};

/// Theil T index of nonnegative payoffs; 0*ln(0) counts as 0. All-zero
/// payoffs throw AllZeroWithoutContext.
InequalityReport theil_index(const Eigen::VectorXd& payoffs);

/// As above, but all-zero payoffs fall back to the zero-budget limit of the
/// index, the eigen-centrality entropy of (g, phi), with
/// convention_used = eigencentrality_limit and shares u_i^2.
InequalityReport theil_index(const Eigen::VectorXd& payoffs, const Network& g,
                             double phi);

/// sum_i u_i^2 ln(n u_i^2) for the unit eigenvector u at the relevant end of
/// g (largest eigenvalue for phi > 0, smallest for phi < 0). This is the
/// large-budget limit of the Theil index of equilibrium payoffs.
double eigencentrality_entropy(const Network& g, double phi);

enum class InterventionMode { single, joint };

/// Large-budget limit of optimal welfare per unit budget.
/// single: (1 - lambda_1(phi*ghat))^-2 (ghat required).
/// joint:  (1 - (n-1)*phi*wbar)^-2 for phi > 0,
///         (1 + phi*wbar*sqrt(floor(n/2)*ceil(n/2)))^-2 for phi < 0.
double welfare_limit(int n, double phi, double wbar, InterventionMode mode,
                     const Network* ghat = nullptr);

/// Large-budget limit of V_joint / V_single:
/// ((1 - phi*lambda_1(ghat)) / (1 - (n-1)*phi*wbar))^2 for phi > 0 and the
/// bipartite analogue with lambda_n(ghat) for phi < 0.
double welfare_ratio_limit(const Network& ghat, double phi, double wbar);

/// Partition of the vertices by the sign of the last eigenvector of g
/// (entries within 1e-10 of zero land in `zeros`). Meaningful for phi < 0.
struct SignPartition {
  std::vector<int> s_plus;
  std::vector<int> s_minus;
  std::vector<int> zeros;
};
SignPartition sign_partition(const Network& g, double phi);

/// -wbar*(n-1)/2 for odd n >= 5: the floor of the smallest eigenvalue over
/// networks whose last eigenvector has equal-magnitude entries. Attained by
/// make_equal_centrality_extremal. Throws BadSize.
double equality_eigen_bound(int n, double wbar);

/// For phi > 0: upper bound C/||(I - phi*ghat) z||^2, z = 1/sqrt(n), on the
/// welfare of any intervention that equalizes all payoffs.
double equal_payoff_welfare_bound(const Network& ghat, double phi, double C);

}  // namespace netgame
