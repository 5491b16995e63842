#include "netgame/game.hpp"

#include <cmath>
#include <string>

namespace netgame {

GameConfig::GameConfig(double phi, Eigen::VectorXd ahat, Network ghat)
    : phi_(phi), ahat_(std::move(ahat)), ghat_(std::move(ghat)) {
  if (ahat_.size() != ghat_.size()) {
    throw BadSize("ahat length must match the network size");
  }
  const Spectrum sp = spectrum(ghat_.weights());
  if (top_eigenvalue(phi_, sp) >= 1.0) {
    throw SingularSystem("lambda_1(phi*ghat) >= 1");
  }
}

EquilibriumResult equilibrium(const GameConfig& cfg, const Eigen::VectorXd& a,
                              const Network& g) {
  if (a.size() != g.size()) {
    throw BadSize("action vector length must match the network size");
  }
  const Spectrum sp = spectrum(g.weights());
  if (top_eigenvalue(cfg.phi(), sp) >= 1.0 - kSingularMargin) {
    throw SingularSystem("lambda_1(phi*g) too close to 1");
  }
  const int n = g.size();
  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(n, n) - cfg.phi() * g.weights();
  // I - phi*g is positive definite under the regularity condition.
  EquilibriumResult r;
  r.x = m.llt().solve(a);
  r.payoffs = 0.5 * r.x.array().square();
  r.welfare = r.x.squaredNorm();
  return r;
}

double welfare(const GameConfig& cfg, const Eigen::VectorXd& a,
               const Network& g) {
  return equilibrium(cfg, a, g).welfare;
}

double assumption1_bound(double phi, int n) {
  if (phi == 0.0) throw PhiZero("bound undefined for phi = 0");
  if (n < 2) throw BadSize("bound requires n >= 2");
  if (phi > 0) return 1.0 / (phi * (n - 1));
  if (n % 2 == 0) return 2.0 / (-phi * n);
  return 2.0 / (-phi * std::sqrt(static_cast<double>(n) * n - 1.0));
}

double regularity_margin(const GameConfig& cfg, const Network& g) {
  return 1.0 - top_eigenvalue(cfg.phi(), spectrum(g.weights()));
}

}  // namespace netgame
