#include "sbcpe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace sbcpe {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw PreconditionError("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
}

void require_separable(const OracleReport& report, const char* op) {
  if (report.M < 2) {
    throw PreconditionError(std::string(op) + " needs at least two feasible actions, M = " +
                            std::to_string(report.M));
  }
  if (!report.unique_maximizer) {
    throw PreconditionError(std::string(op) + " needs a unique welfare maximizer");
  }
}

}  // namespace

OracleReport solve(const GameSpec& game) {
  const std::int64_t total = game.num_joint_actions();
  const auto welfare = welfare_table(game);
  const auto feasible = feasible_mask(game);

  OracleReport report;
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t best_k = -1;
  for (std::int64_t k = 0; k < total; ++k) {
    if (!feasible[k]) continue;
    ++report.M;
    report.feasible_set.push_back(joint_from_index(game, k));
    if (welfare[k] > best) {
      best = welfare[k];
      best_k = k;
    }
  }
  if (report.M == 0) return report;

  report.a_star = joint_from_index(game, best_k);
  report.a_star_index = best_k;
  report.w_star = best;

  double second = -std::numeric_limits<double>::infinity();
  int ties = 0;
  for (std::int64_t k = 0; k < total; ++k) {
    if (!feasible[k]) continue;
    if (k != best_k) second = std::max(second, welfare[k]);
    if (std::abs(welfare[k] - best) <= kWelfareTieTolerance) ++ties;
  }
  report.unique_maximizer = (ties == 1);
  if (report.M >= 2) {
    report.second_best_welfare = second;
    report.delta1 = best - second;
  }

  double worst = best;
  for (std::int64_t k = 0; k < total; ++k) worst = std::min(worst, welfare[k]);
  report.delta_max = best - worst;
  return report;
}

double theta_at(const GameSpec& game, double epsilon, std::int64_t joint) {
  check_epsilon(epsilon);
  if (!is_feasible_at(game, joint)) return 0.0;
  return std::pow(epsilon, game.n - welfare_at(game, joint)) /
         static_cast<double>(game.num_joint_actions());
}

double theta(const GameSpec& game, double epsilon, const JointAction& a) {
  return theta_at(game, epsilon, joint_index(game, a));
}

std::vector<double> theta_table(const GameSpec& game, double epsilon) {
  check_epsilon(epsilon);
  const std::int64_t total = game.num_joint_actions();
  const auto welfare = welfare_table(game);
  const auto feasible = feasible_mask(game);
  std::vector<double> table(total, 0.0);
  for (std::int64_t k = 0; k < total; ++k) {
    if (feasible[k]) {
      table[k] = std::pow(epsilon, game.n - welfare[k]) / static_cast<double>(total);
    }
  }
  return table;
}

double content_prob(const GameSpec& game, double epsilon, const JointAction& a) {
  check_epsilon(epsilon);
  const std::int64_t k = joint_index(game, a);
  if (!is_feasible_at(game, k)) return 0.0;
  return std::pow(epsilon, game.n - welfare_at(game, k));
}

std::vector<double> endorsed_distribution(const GameSpec& game, double epsilon) {
  auto table = theta_table(game, epsilon);
  double z = 0.0;
  for (double v : table) z += v;
  if (z <= 0.0) {
    throw EmptyFeasibleSetError("endorsed_distribution needs a nonempty feasible set");
  }
  for (double& v : table) v /= z;
  return table;
}

double theta_marginal(const GameSpec& game, double epsilon, int agent, int action) {
  if (agent < 0 || agent >= game.n || action < 0 || action >= game.action_counts[agent]) {
    throw InvalidActionError("theta_marginal: agent/action out of range");
  }
  const auto table = theta_table(game, epsilon);
  const auto strides = index_strides(game);
  double sum = 0.0;
  for (std::int64_t k = 0; k < game.num_joint_actions(); ++k) {
    if ((k / strides[agent]) % game.action_counts[agent] == action) sum += table[k];
  }
  return sum;
}

double xi(const GameSpec& game, const OracleReport& report, double epsilon, double delta) {
  check_epsilon(epsilon);
  if (!(delta > 0.0)) throw PreconditionError("xi needs delta > 0");
  if (report.M < 2) {
    throw PreconditionError("xi needs at least two feasible actions, M = " +
                            std::to_string(report.M));
  }
  return delta / (static_cast<double>(game.num_joint_actions()) * report.M) *
         std::pow(epsilon, game.n - report.second_best_welfare);
}

double xi(const GameSpec& game, double epsilon, double delta) {
  return xi(game, solve(game), epsilon, delta);
}

double epsilon_bound(const OracleReport& report, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("epsilon_bound needs delta > 0");
  require_separable(report, "epsilon_bound");
  return std::pow(report.M + delta, -1.0 / report.delta1);
}

double epsilon_bound(const GameSpec& game, double delta) {
  return epsilon_bound(solve(game), delta);
}

double k_star_exact(std::int64_t M, std::int64_t T, double xi) {
  return std::log(4.0 * M * T * xi * xi) / (2.0 * xi * xi);
}

double regret_bound_formula(double delta_max, std::int64_t M, std::int64_t T, double xi) {
  const double xi2 = xi * xi;
  return delta_max / (2.0 * xi2) *
         (1.0 + std::log(4.0 * M * T * xi2) * (1.0 - 1.0 / (2.0 * T * xi2)));
}

ParameterPlan plan(const GameSpec& game, const OracleReport& report, double epsilon,
                   double delta, std::int64_t T) {
  check_epsilon(epsilon);
  if (T < 1) throw PreconditionError("plan needs T >= 1");
  require_separable(report, "plan");

  ParameterPlan p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.horizon_T = T;
  p.epsilon_max = epsilon_bound(report, delta);
  if (!(epsilon < p.epsilon_max)) {
    throw InadmissibleEpsilonError("epsilon " + std::to_string(epsilon) +
                                   " is not below the admissibility bound " +
                                   std::to_string(p.epsilon_max));
  }
  p.xi = xi(game, report, epsilon, delta);
  const double arg = 4.0 * report.M * static_cast<double>(T) * p.xi * p.xi;
  if (!(arg > 1.0)) {
    throw HorizonTooShortError("4*M*T*xi^2 = " + std::to_string(arg) +
                               " <= 1; exploration length undefined");
  }
  const double k_exact = k_star_exact(report.M, T, p.xi);
  p.k_star = std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(k_exact)), T);
  p.beta = 2.0 * report.M * std::exp(-2.0 * p.k_star * p.xi * p.xi);
  p.regret_bound = regret_bound_formula(report.delta_max, report.M, T, p.xi);
  return p;
}

ParameterPlan plan(const GameSpec& game, double epsilon, double delta, std::int64_t T) {
  return plan(game, solve(game), epsilon, delta, T);
}

bool verify_lemma1(const GameSpec& game, const OracleReport& report, double epsilon,
                   double delta) {
  require_separable(report, "verify_lemma1");
  const double margin = xi(game, report, epsilon, delta);
  const auto table = theta_table(game, epsilon);
  const double lhs = table[report.a_star_index] - margin;
  double rhs = 0.0;
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(table.size()); ++k) {
    if (table[k] > 0.0 && k != report.a_star_index) rhs += table[k] + margin;
  }
  return lhs > rhs;
}

bool verify_lemma1(const GameSpec& game, double epsilon, double delta) {
  return verify_lemma1(game, solve(game), epsilon, delta);
}

JointAction identify_from_estimate(const GameSpec& game,
                                   const std::vector<double>& theta_hat) {
  const std::int64_t total = game.num_joint_actions();
  if (static_cast<std::int64_t>(theta_hat.size()) != total) {
    throw PreconditionError("theta_hat must have one entry per joint action");
  }
  const auto strides = index_strides(game);
  JointAction result(game.n, 0);
  for (int i = 0; i < game.n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    int best_action = 0;
    for (int ai = 0; ai < game.action_counts[i]; ++ai) {
      double sum = 0.0;
      for (std::int64_t k = 0; k < total; ++k) {
        if ((k / strides[i]) % game.action_counts[i] == ai) sum += theta_hat[k];
      }
      if (sum > best) {  // strictly greater keeps the smallest index on ties
        best = sum;
        best_action = ai;
      }
    }
    result[i] = best_action;
  }
  return result;
}

std::string report_to_json(const OracleReport& report) {
  nlohmann::json j;
  if (report.a_star) {
    j["a_star"] = *report.a_star;
  } else {
    j["a_star"] = nullptr;
  }
  j["w_star"] = report.M > 0 ? nlohmann::json(report.w_star) : nlohmann::json(nullptr);
  j["feasible_set"] = report.feasible_set;
  j["M"] = report.M;
  j["delta1"] = report.M >= 2 ? nlohmann::json(report.delta1) : nlohmann::json(nullptr);
  j["delta_max"] = report.M > 0 ? nlohmann::json(report.delta_max) : nlohmann::json(nullptr);
  j["unique_maximizer"] = report.unique_maximizer;
  j["second_best_welfare"] =
      report.M >= 2 ? nlohmann::json(report.second_best_welfare) : nlohmann::json(nullptr);
  return j.dump(2);
}

std::string plan_to_json(const ParameterPlan& plan) {
  nlohmann::json j;
  j["epsilon"] = plan.epsilon;
  j["delta"] = plan.delta;
  j["xi"] = plan.xi;
  j["epsilon_max"] = plan.epsilon_max;
  j["horizon_T"] = plan.horizon_T;
  j["k_star"] = plan.k_star;
  j["beta"] = plan.beta;
  j["regret_bound"] = plan.regret_bound;
  return j.dump(2);
}

}  // namespace sbcpe
