#pragma once

#include <Eigen/Dense>
#include <utility>

#include "netgame/game.hpp"

namespace netgame {

/// Solution of the fixed-network problem
///   max_a a^T (I - phi*g)^-2 a   s.t.  ||a - ahat||^2 <= c.
struct SingleSolution {
  Eigen::VectorXd a_star;
  double mu_star = 0.0;      // shadow price of the budget; +inf when c == 0
  double value = 0.0;        // a*^T (I - phi*g)^-2 a*
  double budget_used = 0.0;  // ||a* - ahat||^2, equal to c whenever c > 0
  double alignment = 0.0;    // |<a*/||a*||, u_top>| in [0, 1]
  bool degenerate_top = false;  // ahat had no mass on the top eigenspace and
                                // the leftover budget was placed there
  bool multiplicity_warning = false;  // propagated from the spectrum of g
};

/// Solves the fixed-network problem through the eigenbasis of g. In
/// components with beta_l = (1 - phi*lambda_l)^-2 the optimum satisfies
/// a_l = mu*ahat_l/(mu - beta_l) where mu > beta_max makes the budget bind;
/// mu is found by bracketed bisection plus safeguarded Newton. When ahat
/// carries no mass on the beta_max eigenspace and the residual budget
/// equation stays below c, mu equals beta_max and the remaining budget goes
/// onto the top eigenvector (degenerate_top).
/// Throws SingularSystem or NonConvergence.
SingleSolution solve_single(const GameConfig& cfg, const Network& g, double c);

/// (1 - lambda_1(phi*g))^-2: the exact shadow price for ahat = 0 and its
/// large-budget limit otherwise.
double shadow_price_limit(const GameConfig& cfg, const Network& g);

/// For phi > 0 and ahat = 0: the welfare-maximizing intervention among those
/// equalizing all payoffs, a = k (I - phi*ghat) z with z = 1/sqrt(n) and
/// k = sqrt(c)/||(I - phi*ghat) z||. Returns the intervention and its value
/// c/||(I - phi*ghat) z||^2. Throws PreconditionViolated.
std::pair<Eigen::VectorXd, double> equal_payoff_single(const GameConfig& cfg,
                                                       double c);

namespace detail {

/// Worker reusing a precomputed spectrum of g (the joint solver calls this
/// once per iterate).
SingleSolution solve_single_spectral(double phi, const Spectrum& sp,
                                     const Eigen::VectorXd& ahat, double c);

}  // namespace detail

}  // namespace netgame
