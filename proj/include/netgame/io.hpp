#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netgame/joint.hpp"

namespace netgame {

/// On-disk problem description. Matrices are row-major arrays of arrays;
/// all I/O is UTF-8 JSON.
struct ProblemFile {
  int n = 0;
  double phi = 0.0;
  double kappa = 1.0;
  double wbar = 1.0;
  double C = 0.0;
  Eigen::VectorXd a_hat;
  Eigen::MatrixXd g_hat;
  SolverOptions options;

  JointProblem to_problem() const;
};

/// Parses a ProblemFile from JSON text. Errors carry the path of the
/// offending field, e.g. "g_hat[2][1]".
ProblemFile parse_problem_file(const std::string& text);

/// Reads and parses `path`.
ProblemFile load_problem_file(const std::string& path);

/// JSON serialization; numeric fields survive a parse round trip bit-exactly.
std::string serialize_problem_file(const ProblemFile& pf);

/// One budget point of cmd_sweep.
struct SweepRecord {
  double C = 0.0;
  double value_joint = 0.0;
  double value_single = 0.0;
  double theil_joint = 0.0;
  double theil_single = 0.0;
  double budget_on_g = 0.0;
  std::vector<double> g_star_upper;  // upper triangle of g*, row-major
  std::vector<double> a_star;
};

/// Command-line flags shared by the subcommands.
struct CliFlags {
  std::optional<double> budget;
  std::optional<int> restarts;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> threads;  // 0 or absent: library default
  std::string format = "json";  // "json" or "csv" where applicable
  bool have_sweep = false;
  double sweep_start = 0.0, sweep_stop = 0.0, sweep_step = 0.0;
  bool exact = true;  // cmd_orient: exhaustive vs heuristic search
};

/// Result of a subcommand: machine `text` on stdout plus a short human
/// summary on stderr. Exit codes: 0 success, 1 input or infeasibility
/// error, 2 converged with warnings.
struct CommandOutput {
  int exit_code = 0;
  std::string text;
  std::string human;
};

CommandOutput cmd_solve(const ProblemFile& pf, const CliFlags& flags);
CommandOutput cmd_sweep(const ProblemFile& pf, const CliFlags& flags);
CommandOutput cmd_compare(const ProblemFile& pf, const CliFlags& flags);
CommandOutput cmd_orient(const ProblemFile& pf, const CliFlags& flags);

/// JSON views used by the commands (kept public for tests).
nlohmann::json solution_to_json(const JointProblem& p, const JointSolution& s);
std::string sweep_to_csv(const std::vector<SweepRecord>& records, int n);

/// Shortest round-trip decimal form of a double (what the JSON writer uses).
std::string double_json(double v);
/// Fixed 12-significant-digit form used in CSV output.
std::string double_csv(double v);

}  // namespace netgame
