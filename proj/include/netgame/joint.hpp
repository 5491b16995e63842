#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "netgame/single.hpp"

namespace netgame {

struct SolverOptions {
  int restarts = 16;
  int max_iters = 10000;
  double grad_tol = 1e-8;   // projected-gradient norm at convergence
  double step_init = 0.1;   // fallback line-search step
  std::uint64_t seed = 0;   // restart r uses seed + r
  int oracle_grid = 21;     // grid resolution of oracle_joint
  bool parallel = true;     // run restarts / enumerations with OpenMP

  void validate() const;  // throws PreconditionViolated on nonpositive fields
};

/// Joint intervention instance:
///   max_{a, g in box} a^T (I - phi*g)^-2 a
///   s.t. kappa*||g - ghat||_F^2 + ||a - ahat||^2 <= C.
/// kappa must be positive and finite; the kappa = infinity limit is the
/// fixed-network problem and is expressed by calling solve_single directly.
class JointProblem {
 public:
  JointProblem(GameConfig cfg, double kappa, double C,
               SolverOptions options = {});

  const GameConfig& cfg() const { return cfg_; }
  double kappa() const { return kappa_; }
  double C() const { return C_; }
  const SolverOptions& options() const { return options_; }

 private:
  GameConfig cfg_;
  double kappa_;
  double C_;
  SolverOptions options_;
};

/// First-order conditions at a candidate joint solution. link_residuals
/// holds, per off-diagonal entry, the stationarity residual of the composite
/// gradient for interior links and the wrong-sided amount at corner links
/// (0 when the corner condition holds).
struct KKTReport {
  double stationarity_a = 0.0;   // ||(I-phi g)^-2 a - mu (a - ahat)||
  Eigen::MatrixXd link_residuals;
  double max_violation = 0.0;    // max entry of link_residuals
};

struct JointSolution {
  Eigen::VectorXd a_star;
  Network g_star;
  double mu_star = 0.0;
  double value = 0.0;
  double budget_on_g = 0.0;  // kappa*||g* - ghat||^2
  double budget_on_a = 0.0;  // ||a* - ahat||^2
  KKTReport kkt;
  std::vector<double> restart_values;  // per-restart optima, by restart index
  bool converged = false;              // at least one restart met grad_tol
  bool multiplicity_warning = false;   // top eigenvalue nearly degenerate at g*
};

/// Value of the outer objective F(g) = solve_single(g, C - kappa||g-ghat||^2)
/// and its envelope gradient
///   grad = phi * Sym[(I-phi g)^-1 a* a*^T (I-phi g)^-2] - 2 mu* kappa (g-ghat)
/// with Sym[M] = M + M^T restricted to off-diagonal entries. Paired with the
/// full-matrix Frobenius inner product this is the ascent direction over
/// symmetric zero-diagonal perturbations.
/// Throws BudgetExhausted when kappa*||g - ghat||^2 exceeds C.
std::pair<double, Eigen::MatrixXd> objective_and_gradient(const JointProblem& p,
                                                          const Network& g);

/// Multi-start projected gradient ascent over the feasible set
/// {g in box[0,wbar], kappa*||g - ghat||^2 <= C}. Restart 0 starts at ghat,
/// restart 1 at the projected complete graph (phi > 0) or the projected
/// spectral bipartite guess (phi < 0), the rest at seeded perturbations of
/// ghat. Deterministic for a fixed seed, with or without parallelism.
/// A failure of every restart to reach grad_tol is reported through
/// converged = false on the best iterate, not an exception.
JointSolution solve_joint(const JointProblem& p);

/// Exhaustive grid search over the free link weights (resolution
/// options.oracle_grid) followed by coordinate-wise pattern refinement.
/// Only for n <= 4; throws TooLarge above that.
std::pair<double, Network> oracle_joint(const JointProblem& p);

/// Structure check of the optimal link changes against the
/// eigen-centrality product rule: for interior links
///   g*_ij - ghat_ij = phi*||a*||^2 / (kappa*(1 - lambda_1(phi g*))) u_i u_j
/// and the matching one-sided conditions at corner links.
/// Requires ahat = 0 (PreconditionViolated otherwise).
struct ProportionalityReport {
  double coefficient = 0.0;     // phi*||a*||^2 / (kappa*(1-lambda_1(phi g*)))
  Eigen::VectorXd eigvec;       // unit eigenvector at the relevant end of g*
  Eigen::MatrixXd interior_residual;  // (g*-ghat) - coefficient*u_i*u_j, 0 at corners
  Eigen::MatrixXd corner_violation;   // wrong-sided amount at corners, else 0
  double max_interior_residual = 0.0;
  double max_corner_violation = 0.0;
};
ProportionalityReport check_eigen_proportionality(const JointProblem& p,
                                                  const JointSolution& s);

/// Small-budget rates of the optimal joint intervention around ghat:
///   (g*_ij - ghat_ij)/C -> phi * u_i u_j / (kappa*(1 - lambda_1(phi ghat)))
///   kappa*||g* - ghat||^2 / C^2 -> gamma / kappa
/// with gamma = phi^2/(1-lambda_1(phi ghat))^2 * (1 - sum_i u_i^4).
/// Requires ghat strictly interior (BoundaryGhat) and a simple top
/// eigenvalue (DegenerateEigenvalue). phi = 0 returns all zeros.
struct SmallBudgetRates {
  double gamma = 0.0;
  Eigen::MatrixXd link_rates;
};
SmallBudgetRates small_budget_asymptotics(const GameConfig& cfg, double kappa);

namespace detail {

/// solve_joint with one extra restart started from `warm_start` (projected
/// onto the feasible set). Budget sweeps use this to warm-start each point
/// from the previous solution.
JointSolution solve_joint_impl(const JointProblem& p,
                               const Eigen::MatrixXd* warm_start);

}  // namespace detail

}  // namespace netgame
