#pragma once

#include <Eigen/Dense>

#include "netgame/network.hpp"
#include "netgame/spectrum.hpp"

namespace netgame {

/// Margin below which the interaction matrix I - phi*g is treated as
/// singular: equilibrium requires lambda_1(phi*g) < 1 - kSingularMargin.
inline constexpr double kSingularMargin = 1e-10;

/// Game primitives: interaction strength phi, pre-intervention standalone
/// marginal utilities ahat and network ghat. Construction checks the
/// regularity condition lambda_1(phi*ghat) < 1.
class GameConfig {
 public:
  GameConfig(double phi, Eigen::VectorXd ahat, Network ghat);

  double phi() const { return phi_; }
  const Eigen::VectorXd& ahat() const { return ahat_; }
  const Network& ghat() const { return ghat_; }
  int size() const { return ghat_.size(); }

 private:
  double phi_;
  Eigen::VectorXd ahat_;
  Network ghat_;
};

struct EquilibriumResult {
  Eigen::VectorXd x;        // equilibrium actions, solves (I - phi*g) x = a
  Eigen::VectorXd payoffs;  // payoffs[i] = x[i]^2 / 2
  double welfare = 0.0;     // sum of x[i]^2 = twice total payoff
};

/// Unique Nash equilibrium of the linear-quadratic game on g with
/// standalone marginal utilities a. Throws SingularSystem when
/// lambda_1(phi*g) >= 1 - kSingularMargin.
EquilibriumResult equilibrium(const GameConfig& cfg, const Eigen::VectorXd& a,
                              const Network& g);

/// a^T (I - phi*g)^-2 a, twice the total equilibrium payoff.
double welfare(const GameConfig& cfg, const Eigen::VectorXd& a,
               const Network& g);

/// Strict upper bound on wbar that guarantees lambda_1(phi*g) < 1 for every
/// network in the box: 1/(phi(n-1)) for phi>0, 2/(-phi*n) for phi<0 and n
/// even, 2/(-phi*sqrt(n^2-1)) for phi<0 and n odd. Throws PhiZero.
double assumption1_bound(double phi, int n);

/// 1 - lambda_1(phi*g); positive whenever the game on g is regular.
double regularity_margin(const GameConfig& cfg, const Network& g);

}  // namespace netgame
