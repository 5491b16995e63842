#include "netgame/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netgame {

namespace {

constexpr double kDykstraTol = 1e-12;
constexpr int kDykstraCap = 10000;
constexpr double kArmijoShrink = 0.5;
constexpr double kArmijoSlope = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr int kNonMonotoneWindow = 5;
constexpr double kTieTol = 1e-9;        // relative tie width in the restart reduction
constexpr double kCornerTol = 1e-9;     // link-at-corner classification
constexpr double kBudgetReserve = 1e-9; // fraction of C kept away from the g-ball

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::MatrixXd proj_box(Eigen::MatrixXd g, double wbar) {
  g = ((g + g.transpose()) * 0.5).eval();
  g = g.cwiseMax(0.0).cwiseMin(wbar);
  g.diagonal().setZero();
  return g;
}

Eigen::MatrixXd proj_ball(const Eigen::MatrixXd& g, const Eigen::MatrixXd& center,
                          double radius) {
  const Eigen::MatrixXd d = g - center;
  const double nd = d.norm();
  if (nd <= radius) return g;
  return center + d * (radius / nd);
}

bool in_box(const Eigen::MatrixXd& g, double wbar) {
  return g.minCoeff() >= 0.0 && g.maxCoeff() <= wbar &&
         g.diagonal().cwiseAbs().maxCoeff() == 0.0;
}

/// Exact projection onto box [0,wbar] (symmetric, zero diagonal) intersected
/// with the Frobenius ball around `center`. If projecting onto one set lands
/// inside the other, that projection is already exact; otherwise run
/// Dykstra's alternating scheme.
Eigen::MatrixXd project_feasible(const Eigen::MatrixXd& g,
                                 const Eigen::MatrixXd& center, double wbar,
                                 double radius) {
  Eigen::MatrixXd pb = proj_box(g, wbar);
  if ((pb - center).norm() <= radius) return pb;
  Eigen::MatrixXd pl = proj_ball(g, center, radius);
  if (in_box(pl, wbar)) return pl;

  Eigen::MatrixXd x = g;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(g.rows(), g.cols());
  Eigen::MatrixXd q = p;
  for (int it = 0; it < kDykstraCap; ++it) {
    const Eigen::MatrixXd y = proj_box(x + p, wbar);
    p = x + p - y;
    const Eigen::MatrixXd x2 = proj_ball(y + q, center, radius);
    q = y + q - x2;
    const double move = (x2 - x).cwiseAbs().maxCoeff();
    x = x2;
    if (move < kDykstraTol) break;
  }
  // The ball projection ran last; nudge any box roundoff back in.
  return proj_box(proj_ball(x, center, radius), wbar);
}

struct Evaluation {
  double value = 0.0;
  Eigen::MatrixXd grad;
  SingleSolution inner;
};

/// F(g) and its envelope gradient. The remaining budget must be nonnegative.
Evaluation evaluate(double phi, const Eigen::MatrixXd& ghat,
                    const Eigen::VectorXd& ahat, double kappa, double C,
                    const Eigen::MatrixXd& g) {
  const double cin = C - kappa * (g - ghat).squaredNorm();
  if (cin < 0.0) {
    throw BudgetExhausted("network change cost exceeds the budget");
  }
  Evaluation ev;
  ev.inner = detail::solve_single_spectral(phi, spectrum(g), ahat, cin);
  ev.value = ev.inner.value;

  const int n = static_cast<int>(g.rows());
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - phi * g;
  const auto llt = m.llt();
  const Eigen::VectorXd minv_a = llt.solve(ev.inner.a_star);
  const Eigen::VectorXd minv2_a = llt.solve(minv_a);
  // (I - phi g)^-1 a a^T (I - phi g)^-2, symmetrized.
  Eigen::MatrixXd grad =
      phi * (minv_a * minv2_a.transpose() + minv2_a * minv_a.transpose());
  const Eigen::MatrixXd dg = g - ghat;
  if (std::isfinite(ev.inner.mu_star)) {
    grad -= 2.0 * ev.inner.mu_star * kappa * dg;
  } else if (dg.cwiseAbs().maxCoeff() > 0.0) {
    throw BudgetExhausted("zero remaining budget away from ghat");
  }
  grad.diagonal().setZero();
  ev.grad = std::move(grad);
  return ev;
}

struct AscentResult {
  Eigen::MatrixXd g;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
};

/// Projected gradient ascent: Barzilai-Borwein step initialization with a
/// nonmonotone Armijo backtracking safeguard, falling back to step_init when
/// the BB trial fails. Stops when the unit-probe projected gradient drops
/// below grad_tol.
AscentResult ascend(double phi, const Eigen::MatrixXd& ghat,
                    const Eigen::VectorXd& ahat, double kappa, double C,
                    double wbar, double radius, Eigen::MatrixXd g0,
                    const SolverOptions& opt) {
  AscentResult res;
  res.g = std::move(g0);
  Evaluation ev = evaluate(phi, ghat, ahat, kappa, C, res.g);
  res.value = ev.value;

  std::vector<double> history{ev.value};
  Eigen::MatrixXd g_prev, grad_prev;
  bool have_prev = false;
  double bb_step = opt.step_init;

  for (int it = 0; it < opt.max_iters; ++it) {
    res.iters = it;
    const Eigen::MatrixXd probe =
        project_feasible(res.g + ev.grad, ghat, wbar, radius);
    if ((probe - res.g).norm() < opt.grad_tol) {
      res.converged = true;
      return res;
    }

    if (have_prev) {
      const Eigen::MatrixXd s = res.g - g_prev;
      const Eigen::MatrixXd y = ev.grad - grad_prev;
      const double sy = (s.array() * y.array()).sum();
      bb_step = sy < 0.0
                    ? std::clamp((s.array() * s.array()).sum() / (-sy), 1e-12, 1e10)
                    : opt.step_init;
    }

    double ref = *std::max_element(
        history.end() - std::min<std::size_t>(history.size(), kNonMonotoneWindow),
        history.end());
    bool accepted = false;
    for (int trial = 0; trial < 2 && !accepted; ++trial) {
      double step = trial == 0 ? bb_step : opt.step_init;
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        const Eigen::MatrixXd cand =
            project_feasible(res.g + step * ev.grad, ghat, wbar, radius);
        const Eigen::MatrixXd d = cand - res.g;
        const double dd = (ev.grad.array() * d.array()).sum();
        if (dd <= 0.0 || d.norm() < 1e-15) break;
        Evaluation next = evaluate(phi, ghat, ahat, kappa, C, cand);
        if (next.value >= ref + kArmijoSlope * dd) {
          g_prev = res.g;
          grad_prev = ev.grad;
          have_prev = true;
          res.g = cand;
          ev = std::move(next);
          res.value = ev.value;
          history.push_back(ev.value);
          accepted = true;
          break;
        }
        step *= kArmijoShrink;
      }
    }
    if (!accepted) return res;  // line search exhausted at numerical precision
  }
  return res;
}

Eigen::MatrixXd restart_point(int r, double phi, const Eigen::MatrixXd& ghat,
                              const Spectrum& ghat_sp, double wbar,
                              double radius, const SolverOptions& opt) {
  const int n = static_cast<int>(ghat.rows());
  if (r == 0) return ghat;
  if (r == 1) {
    Eigen::MatrixXd target;
    if (phi > 0.0) {
      target = Eigen::MatrixXd::Constant(n, n, wbar);
      target.diagonal().setZero();
    } else if (phi < 0.0) {
      // Bipartite guess from the sign pattern of the last eigenvector.
      const Eigen::VectorXd u = ghat_sp.eigenvectors.col(n - 1);
      target = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j && (u[i] >= 0.0) != (u[j] >= 0.0)) target(i, j) = wbar;
        }
      }
    } else {
      target = ghat;
    }
    return project_feasible(target, ghat, wbar, radius);
  }
  std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(r));
  Eigen::MatrixXd pert = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pert(i, j) = pert(j, i) = (uniform01(rng) - 0.5) * wbar;
    }
  }
  return project_feasible(ghat + pert, ghat, wbar, radius);
}

KKTReport build_kkt(const JointProblem& p, const Eigen::MatrixXd& gstar,
                    const SingleSolution& inner) {
  const int n = static_cast<int>(gstar.rows());
  KKTReport kkt;
  kkt.link_residuals = Eigen::MatrixXd::Zero(n, n);
  if (p.C() == 0.0 || !std::isfinite(inner.mu_star)) {
    return kkt;  // no budget: the first-order conditions are vacuous
  }
  const double phi = p.cfg().phi();
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - phi * gstar;
  const auto llt = m.llt();
  const Eigen::VectorXd minv_a = llt.solve(inner.a_star);
  const Eigen::VectorXd minv2_a = llt.solve(minv_a);
  kkt.stationarity_a =
      (minv2_a - inner.mu_star * (inner.a_star - p.cfg().ahat())).norm();
  Eigen::MatrixXd grad =
      phi * (minv_a * minv2_a.transpose() + minv2_a * minv_a.transpose()) -
      2.0 * inner.mu_star * p.kappa() * (gstar - p.cfg().ghat().weights());
  grad.diagonal().setZero();
  const double wbar = p.cfg().ghat().wbar();
  const double ctol = kCornerTol * std::max(1.0, wbar);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double viol;
      if (gstar(i, j) <= ctol) {
        viol = std::max(0.0, grad(i, j));       // at 0 the gradient must push down
      } else if (gstar(i, j) >= wbar - ctol) {
        viol = std::max(0.0, -grad(i, j));      // at wbar it must push up
      } else {
        viol = std::abs(grad(i, j));
      }
      kkt.link_residuals(i, j) = viol;
    }
  }
  kkt.max_violation = kkt.link_residuals.maxCoeff();
  return kkt;
}

}  // namespace

void SolverOptions::validate() const {
  if (restarts < 1 || max_iters < 1 || !(grad_tol > 0.0) ||
      !(step_init > 0.0) || oracle_grid < 2) {
    throw PreconditionViolated("solver options must be positive");
  }
}

JointProblem::JointProblem(GameConfig cfg, double kappa, double C,
                           SolverOptions options)
    : cfg_(std::move(cfg)), kappa_(kappa), C_(C), options_(options) {
  if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
    throw PreconditionViolated("kappa must be positive and finite");
  }
  if (!(C_ >= 0.0)) {
    throw PreconditionViolated("budget C must be nonnegative");
  }
  options_.validate();
}

std::pair<double, Eigen::MatrixXd> objective_and_gradient(const JointProblem& p,
                                                          const Network& g) {
  Evaluation ev = evaluate(p.cfg().phi(), p.cfg().ghat().weights(),
                           p.cfg().ahat(), p.kappa(), p.C(), g.weights());
  return {ev.value, std::move(ev.grad)};
}

namespace detail {

JointSolution solve_joint_impl(const JointProblem& p,
                               const Eigen::MatrixXd* warm_start) {
  const GameConfig& cfg = p.cfg();
  const double phi = cfg.phi();
  const Eigen::MatrixXd& ghat = cfg.ghat().weights();
  const double wbar = cfg.ghat().wbar();
  const SolverOptions& opt = p.options();
  const double radius =
      std::sqrt(std::max(0.0, p.C() * (1.0 - kBudgetReserve)) / p.kappa());
  const Spectrum ghat_sp = spectrum(ghat);

  const int extra = warm_start != nullptr ? 1 : 0;
  const int total = opt.restarts + extra;
  std::vector<AscentResult> results(total);

  auto run_one = [&](int r) {
    Eigen::MatrixXd g0 =
        (extra != 0 && r == total - 1)
            ? project_feasible(*warm_start, ghat, wbar, radius)
            : restart_point(r, phi, ghat, ghat_sp, wbar, radius, opt);
    results[r] = ascend(phi, ghat, cfg.ahat(), p.kappa(), p.C(), wbar, radius,
                        std::move(g0), opt);
  };

#ifdef _OPENMP
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < total; ++r) run_one(r);
  } else {
    for (int r = 0; r < total; ++r) run_one(r);
  }
#else
  for (int r = 0; r < total; ++r) run_one(r);
#endif

  // Deterministic reduction: max by value with a small relative tie band,
  // ties resolved to the lowest restart index.
  int best = 0;
  for (int r = 1; r < total; ++r) {
    if (results[r].value >
        results[best].value + kTieTol * std::max(1.0, std::abs(results[best].value))) {
      best = r;
    }
  }

  const Eigen::MatrixXd& gstar = results[best].g;
  const double cin = std::max(0.0, p.C() - p.kappa() * (gstar - ghat).squaredNorm());
  SingleSolution inner =
      detail::solve_single_spectral(phi, spectrum(gstar), cfg.ahat(), cin);

  std::vector<double> restart_values;
  restart_values.reserve(total);
  for (const auto& res : results) restart_values.push_back(res.value);

  JointSolution sol{
      .a_star = inner.a_star,
      .g_star = Network(gstar, wbar),
      .mu_star = inner.mu_star,
      .value = inner.value,
      .budget_on_g = p.kappa() * (gstar - ghat).squaredNorm(),
      .budget_on_a = inner.budget_used,
      .kkt = build_kkt(p, gstar, inner),
      .restart_values = std::move(restart_values),
      .converged = std::any_of(results.begin(), results.end(),
                               [](const AscentResult& r) { return r.converged; }),
      .multiplicity_warning = inner.multiplicity_warning,
  };
  return sol;
}

}  // namespace detail

JointSolution solve_joint(const JointProblem& p) {
  return detail::solve_joint_impl(p, nullptr);
}

std::pair<double, Network> oracle_joint(const JointProblem& p) {
  const GameConfig& cfg = p.cfg();
  const int n = cfg.size();
  if (n > 4) throw TooLarge("oracle enumerates link grids only up to n = 4");
  const double phi = cfg.phi();
  const Eigen::MatrixXd& ghat = cfg.ghat().weights();
  const double wbar = cfg.ghat().wbar();
  const int m = p.options().oracle_grid;
  const double radius = std::sqrt(p.C() / p.kappa());

  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) links.emplace_back(i, j);
  const int nl = static_cast<int>(links.size());
  unsigned long long total = 1;
  for (int k = 0; k < nl; ++k) total *= static_cast<unsigned long long>(m);

  const auto feasible = [&](Eigen::MatrixXd g) {
    // Scale toward ghat onto the budget ball; a convex move stays in the box.
    const double nd = (g - ghat).norm();
    if (nd > radius) g = ghat + (g - ghat) * (radius / nd);
    return g;
  };
  const auto value_at = [&](const Eigen::MatrixXd& g) {
    const double cin =
        std::max(0.0, p.C() - p.kappa() * (g - ghat).squaredNorm());
    return detail::solve_single_spectral(phi, spectrum(g), cfg.ahat(), cin)
        .value;
  };
  const auto decode = [&](unsigned long long idx) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < nl; ++k) {
      const double v = wbar * static_cast<double>(idx % m) / (m - 1);
      g(links[k].first, links[k].second) = v;
      g(links[k].second, links[k].first) = v;
      idx /= m;
    }
    return feasible(std::move(g));
  };

  // ghat is always a candidate so the search covers C = 0 exactly.
  double best_value = value_at(ghat);
  Eigen::MatrixXd best_g = ghat;
  unsigned long long best_idx = total;

  const auto consider = [](double v, unsigned long long idx, double& bv,
                           unsigned long long& bi) {
    return v > bv || (v == bv && idx < bi);
  };

#ifdef _OPENMP
  if (p.options().parallel) {
    const int threads = omp_get_max_threads();
    std::vector<double> tv(threads, -std::numeric_limits<double>::infinity());
    std::vector<unsigned long long> ti(threads, total);
#pragma omp parallel
    {
      const int t = omp_get_thread_num();
#pragma omp for schedule(static)
      for (long long s = 0; s < static_cast<long long>(total); ++s) {
        const auto idx = static_cast<unsigned long long>(s);
        const double v = value_at(decode(idx));
        if (consider(v, idx, tv[t], ti[t])) {
          tv[t] = v;
          ti[t] = idx;
        }
      }
    }
    for (int t = 0; t < threads; ++t) {
      if (ti[t] < total && consider(tv[t], ti[t], best_value, best_idx)) {
        best_value = tv[t];
        best_idx = ti[t];
        best_g = decode(ti[t]);
      }
    }
  } else
#endif
  {
    for (unsigned long long idx = 0; idx < total; ++idx) {
      const double v = value_at(decode(idx));
      if (consider(v, idx, best_value, best_idx)) {
        best_value = v;
        best_idx = idx;
        best_g = decode(idx);
      }
    }
  }

  // Coordinate-wise pattern refinement from the best grid point.
  double h = wbar / (m - 1);
  while (h > 1e-6) {
    bool improved = false;
    for (int k = 0; k < nl; ++k) {
      for (const double dir : {+1.0, -1.0}) {
        Eigen::MatrixXd cand = best_g;
        const double v = std::clamp(
            cand(links[k].first, links[k].second) + dir * h, 0.0, wbar);
        cand(links[k].first, links[k].second) = v;
        cand(links[k].second, links[k].first) = v;
        cand = feasible(std::move(cand));
        const double fv = value_at(cand);
        if (fv > best_value) {
          best_value = fv;
          best_g = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }

  return {best_value, Network(best_g, wbar)};
}

ProportionalityReport check_eigen_proportionality(const JointProblem& p,
                                                  const JointSolution& s) {
  if (p.cfg().ahat().norm() > 1e-14) {
    throw PreconditionViolated("structure check requires ahat = 0");
  }
  const int n = p.cfg().size();
  const double phi = p.cfg().phi();
  const double wbar = p.cfg().ghat().wbar();
  const Eigen::MatrixXd& gstar = s.g_star.weights();
  const Eigen::MatrixXd dg = gstar - p.cfg().ghat().weights();

  const Spectrum sp = spectrum(gstar);
  const Eigen::VectorXd u = sp.eigenvectors.col(top_eigen_index(phi, n));
  const double lam_top = top_eigenvalue(phi, sp);

  ProportionalityReport rep;
  rep.eigvec = u;
  rep.coefficient =
      phi * s.a_star.squaredNorm() / (p.kappa() * (1.0 - lam_top));
  rep.interior_residual = Eigen::MatrixXd::Zero(n, n);
  rep.corner_violation = Eigen::MatrixXd::Zero(n, n);
  const double ctol = kCornerTol * std::max(1.0, wbar);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double target = rep.coefficient * u[i] * u[j];
      if (gstar(i, j) <= ctol) {
        rep.corner_violation(i, j) = std::max(0.0, target - dg(i, j));
      } else if (gstar(i, j) >= wbar - ctol) {
        rep.corner_violation(i, j) = std::max(0.0, dg(i, j) - target);
      } else {
        rep.interior_residual(i, j) = dg(i, j) - target;
      }
    }
  }
  rep.max_interior_residual = rep.interior_residual.cwiseAbs().maxCoeff();
  rep.max_corner_violation = rep.corner_violation.maxCoeff();
  return rep;
}

SmallBudgetRates small_budget_asymptotics(const GameConfig& cfg, double kappa) {
  if (!(kappa > 0.0)) throw PreconditionViolated("kappa must be positive");
  const int n = cfg.size();
  SmallBudgetRates out;
  out.link_rates = Eigen::MatrixXd::Zero(n, n);
  if (cfg.phi() == 0.0) return out;

  const Eigen::MatrixXd& ghat = cfg.ghat().weights();
  const double wbar = cfg.ghat().wbar();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (ghat(i, j) <= 1e-12 || ghat(i, j) >= wbar - 1e-12) {
        throw BoundaryGhat("ghat must be strictly interior");
      }
    }
  }
  const Spectrum sp = spectrum(ghat);
  if (top_eigen_degenerate(cfg.phi(), sp)) {
    throw DegenerateEigenvalue("top eigenvalue of phi*ghat is not simple");
  }
  const double lam_top = top_eigenvalue(cfg.phi(), sp);
  const Eigen::VectorXd u = sp.eigenvectors.col(top_eigen_index(cfg.phi(), n));
  const double denom = 1.0 - lam_top;
  out.gamma = cfg.phi() * cfg.phi() / (denom * denom) *
              (1.0 - u.array().pow(4).sum());
  out.link_rates = cfg.phi() / (kappa * denom) * (u * u.transpose());
  out.link_rates.diagonal().setZero();
  return out;
}

}  // namespace netgame
