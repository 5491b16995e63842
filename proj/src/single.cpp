#include "netgame/single.hpp"

#include <cmath>
#include <limits>

namespace netgame {

namespace {

constexpr double kMassTol = 1e-12;   // top-eigenspace mass treated as zero
constexpr double kMuTol = 1e-12;     // relative tolerance on the root mu
constexpr int kMaxRootIters = 200;

double alignment_of(const Eigen::VectorXd& a, const Eigen::VectorXd& u_top) {
  const double na = a.norm();
  if (na == 0.0) return 0.0;
  return std::min(1.0, std::abs(a.dot(u_top)) / na);
}

}  // namespace

namespace detail {

SingleSolution solve_single_spectral(double phi, const Spectrum& sp,
                                     const Eigen::VectorXd& ahat, double c) {
  const int n = static_cast<int>(sp.eigenvalues.size());
  if (ahat.size() != n) throw BadSize("ahat length mismatch");
  if (c < 0.0) throw PreconditionViolated("budget must be nonnegative");
  if (top_eigenvalue(phi, sp) >= 1.0 - kSingularMargin) {
    throw SingularSystem("lambda_1(phi*g) too close to 1");
  }

  SingleSolution out;
  out.multiplicity_warning = top_eigen_degenerate(phi, sp);

  Eigen::VectorXd beta(n);
  for (int l = 0; l < n; ++l) {
    const double d = 1.0 - phi * sp.eigenvalues[l];
    beta[l] = 1.0 / (d * d);
  }
  const int rep = top_eigen_index(phi, n);
  const double beta_max = beta[rep];
  const Eigen::VectorXd ah = sp.eigenvectors.transpose() * ahat;

  if (c == 0.0) {
    out.a_star = ahat;
    out.mu_star = std::numeric_limits<double>::infinity();
    out.value = (beta.array() * ah.array().square()).sum();
    out.budget_used = 0.0;
    out.alignment = alignment_of(ahat, sp.eigenvectors.col(rep));
    return out;
  }

  // phi == 0 with ahat == 0: every direction is optimal; pick e_0.
  if (phi == 0.0 && ahat.norm() < kMassTol) {
    out.a_star = Eigen::VectorXd::Zero(n);
    out.a_star[0] = std::sqrt(c);
    out.mu_star = 1.0;
    out.value = c;
    out.budget_used = c;
    out.alignment = 1.0;
    out.degenerate_top = true;
    return out;
  }

  // Top eigenspace: all components whose beta ties beta_max.
  std::vector<bool> top(n, false);
  double top_mass_sq = 0.0;
  for (int l = 0; l < n; ++l) {
    if (beta_max - beta[l] <= 1e-12 * std::max(1.0, beta_max)) {
      top[l] = true;
      top_mass_sq += ah[l] * ah[l];
    }
  }
  const bool mass_zero = std::sqrt(top_mass_sq) < kMassTol;

  // Budget spent by the non-top components when mu sits at beta_max.
  double rest_at_bmax = 0.0;
  for (int l = 0; l < n; ++l) {
    if (!top[l]) {
      const double t = beta[l] * ah[l] / (beta_max - beta[l]);
      rest_at_bmax += t * t;
    }
  }

  const auto finish_degenerate = [&](double sign) {
    Eigen::VectorXd comp = ah;
    for (int l = 0; l < n; ++l) {
      if (!top[l]) comp[l] = beta_max * ah[l] / (beta_max - beta[l]);
    }
    comp[rep] += sign * std::sqrt(std::max(0.0, c - rest_at_bmax));
    out.a_star = sp.eigenvectors * comp;
    out.mu_star = beta_max;
    out.value = (beta.array() * comp.array().square()).sum();
    out.budget_used = (comp - ah).squaredNorm();
    out.alignment = alignment_of(out.a_star, sp.eigenvectors.col(rep));
    out.degenerate_top = true;
    return out;
  };

  if (mass_zero && rest_at_bmax <= c) {
    return finish_degenerate(+1.0);
  }

  // Budget residual R(mu) = sum (beta_l ahat_l / (mu - beta_l))^2, strictly
  // decreasing on (beta_max, inf); solve R(mu) = c.
  const auto residual = [&](double mu) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) {
      const double t = beta[l] * ah[l] / (mu - beta[l]);
      s += t * t;
    }
    return s;
  };
  const auto residual_deriv = [&](double mu) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) {
      const double t = beta[l] * ah[l];
      const double d = mu - beta[l];
      s += -2.0 * t * t / (d * d * d);
    }
    return s;
  };

  double lo = beta_max + 1e-12;
  double hi =
      beta_max + std::max(1.0, (beta.array() * ah.array().abs()).sum() /
                                   std::sqrt(c));
  int guard = 0;
  while (residual(hi) > c) {
    hi = beta_max + 2.0 * (hi - beta_max);
    if (++guard > 200) throw NonConvergence("upper bracket search failed");
  }
  if (residual(lo) <= c) {
    // The top mass is so small that mu collapses onto beta_max within
    // tolerance; place the leftover budget on the top eigenvector with the
    // sign of the existing component.
    return finish_degenerate(ah[rep] < 0.0 ? -1.0 : +1.0);
  }

  // Bisection to a coarse bracket, then safeguarded Newton.
  double mu = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxRootIters; ++it) {
    const double f = residual(mu) - c;
    if (f > 0.0) {
      lo = mu;
    } else {
      hi = mu;
    }
    double next;
    const double fp = residual_deriv(mu);
    if (fp < 0.0) {
      next = mu - f / fp;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    const double move = std::abs(next - mu);
    mu = next;
    if (move <= kMuTol * std::max(1.0, mu) || hi - lo <= kMuTol * std::max(1.0, hi)) {
      break;
    }
    if (it + 1 == kMaxRootIters) {
      throw NonConvergence("shadow-price root finder hit the iteration cap");
    }
  }

  Eigen::VectorXd comp(n);
  for (int l = 0; l < n; ++l) comp[l] = mu * ah[l] / (mu - beta[l]);
  out.a_star = sp.eigenvectors * comp;
  out.mu_star = mu;
  out.value = (beta.array() * comp.array().square()).sum();
  out.budget_used = (comp - ah).squaredNorm();
  out.alignment = alignment_of(out.a_star, sp.eigenvectors.col(rep));
  return out;
}

}  // namespace detail

SingleSolution solve_single(const GameConfig& cfg, const Network& g, double c) {
  return detail::solve_single_spectral(cfg.phi(), spectrum(g.weights()),
                                       cfg.ahat(), c);
}

double shadow_price_limit(const GameConfig& cfg, const Network& g) {
  const double d = 1.0 - top_eigenvalue(cfg.phi(), spectrum(g.weights()));
  return 1.0 / (d * d);
}

std::pair<Eigen::VectorXd, double> equal_payoff_single(const GameConfig& cfg,
                                                       double c) {
  if (!(cfg.phi() > 0.0)) {
    throw PreconditionViolated("equal-payoff intervention requires phi > 0");
  }
  if (cfg.ahat().norm() > 1e-14) {
    throw PreconditionViolated("equal-payoff intervention requires ahat = 0");
  }
  if (c < 0.0) throw PreconditionViolated("budget must be nonnegative");
  const int n = cfg.size();
  const Eigen::VectorXd z =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(n, n) - cfg.phi() * cfg.ghat().weights();
  const Eigen::VectorXd mz = m * z;
  const double k = std::sqrt(c) / mz.norm();
  return {k * mz, c / mz.squaredNorm()};
}

}  // namespace netgame
