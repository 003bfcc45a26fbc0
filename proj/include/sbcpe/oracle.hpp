#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbcpe/game.hpp"

namespace sbcpe {

// Two feasible actions whose welfares differ by at most this are treated as
// tied when deciding uniqueness of the maximizer.
inline constexpr double kWelfareTieTolerance = 1e-12;

// Ground truth from exhaustive enumeration of A.
struct OracleReport {
  std::optional<JointAction> a_star;     // absent iff M = 0
  std::int64_t a_star_index = -1;        // joint_index of a_star, -1 if absent
  double w_star = 0.0;                   // W(a*); meaningless when M = 0
  std::vector<JointAction> feasible_set; // A_lambda in joint_index order
  std::int64_t M = 0;                    // |A_lambda|
  double delta1 = 0.0;                   // W* - second best feasible; M >= 2 only
  double delta_max = 0.0;                // max_a W(a*) - W(a) over all of A
  bool unique_maximizer = false;
  double second_best_welfare = 0.0;      // max feasible welfare off a*; M >= 2 only
};

OracleReport solve(const GameSpec& game);

// theta(a) = eps^{n - W(a)} / |A| on the feasible set, 0 elsewhere: the
// per-round probability that uniform exploration plays a and every agent
// signals content.
double theta(const GameSpec& game, double epsilon, const JointAction& a);
double theta_at(const GameSpec& game, double epsilon, std::int64_t joint);
std::vector<double> theta_table(const GameSpec& game, double epsilon);

// P(m = 1 | a) = eps^{n - W(a)} on the feasible set, 0 elsewhere.
// Equals theta(a) * |A|.
double content_prob(const GameSpec& game, double epsilon, const JointAction& a);

// Conditional law of the played action given unanimous content:
// theta(a) / sum_{feasible} theta. Dense over A, zero off the feasible set.
std::vector<double> endorsed_distribution(const GameSpec& game, double epsilon);

// Marginal theta_i(a_i) = sum over joints where agent i plays a_i.
double theta_marginal(const GameSpec& game, double epsilon, int agent, int action);

// Separation margin xi = delta / (|A| M) * eps^{n - second_best_welfare}.
double xi(const GameSpec& game, const OracleReport& report, double epsilon, double delta);
double xi(const GameSpec& game, double epsilon, double delta);

// Admissibility ceiling (M + delta)^{-1/Delta_1}.
double epsilon_bound(const OracleReport& report, double delta);
double epsilon_bound(const GameSpec& game, double delta);

// Derived theory constants for a given (epsilon, delta, T).
struct ParameterPlan {
  double epsilon = 0.0;
  double delta = 0.0;
  double xi = 0.0;
  double epsilon_max = 0.0;
  std::int64_t horizon_T = 0;
  std::int64_t k_star = 0;   // ceil(log(4 M T xi^2) / (2 xi^2)), capped at T
  double beta = 0.0;         // 2 M exp(-2 k_star xi^2)
  double regret_bound = 0.0;
};

ParameterPlan plan(const GameSpec& game, const OracleReport& report, double epsilon,
                   double delta, std::int64_t T);
ParameterPlan plan(const GameSpec& game, double epsilon, double delta, std::int64_t T);

// Formula-level pieces, exposed for direct checking.
double k_star_exact(std::int64_t M, std::int64_t T, double xi);
double regret_bound_formula(double delta_max, std::int64_t M, std::int64_t T, double xi);

// Evaluates theta(a*) - xi > sum_{feasible a != a*} (theta(a) + xi) exactly.
bool verify_lemma1(const GameSpec& game, const OracleReport& report, double epsilon,
                   double delta);
bool verify_lemma1(const GameSpec& game, double epsilon, double delta);

// Per-agent argmax of the theta_hat marginals, ties toward the smallest
// action index. theta_hat is dense over A (joint_index order), entries >= 0.
JointAction identify_from_estimate(const GameSpec& game,
                                   const std::vector<double>& theta_hat);

std::string report_to_json(const OracleReport& report);
std::string plan_to_json(const ParameterPlan& plan);

}  // namespace sbcpe
