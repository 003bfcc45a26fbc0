#include "sbcpe/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sbcpe/format.hpp"
#include "sbcpe/oracle.hpp"

namespace sbcpe {

EmpiricalTheta make_empirical(const GameSpec& game) {
  EmpiricalTheta emp;
  emp.counts.assign(game.num_joint_actions(), 0);
  return emp;
}

void observe(EmpiricalTheta& emp, std::int64_t joint, bool unanimous) {
  if (joint < 0 || joint >= static_cast<std::int64_t>(emp.counts.size())) {
    throw InvalidActionError("observe: joint index out of range");
  }
  if (unanimous) ++emp.counts[joint];
  ++emp.t;
}

double theta_hat(const EmpiricalTheta& emp, std::int64_t joint) {
  if (emp.t == 0) throw PreconditionError("theta_hat undefined at t = 0");
  if (joint < 0 || joint >= static_cast<std::int64_t>(emp.counts.size())) {
    throw InvalidActionError("theta_hat: joint index out of range");
  }
  return static_cast<double>(emp.counts[joint]) / static_cast<double>(emp.t);
}

std::vector<double> theta_hat_table(const EmpiricalTheta& emp) {
  if (emp.t == 0) throw PreconditionError("theta_hat undefined at t = 0");
  std::vector<double> table(emp.counts.size());
  for (std::size_t k = 0; k < emp.counts.size(); ++k) {
    table[k] = static_cast<double>(emp.counts[k]) / static_cast<double>(emp.t);
  }
  return table;
}

std::int64_t marginal_count(const EmpiricalTheta& emp, const GameSpec& game, int agent,
                            int action) {
  if (agent < 0 || agent >= game.n || action < 0 || action >= game.action_counts[agent]) {
    throw InvalidActionError("marginal: agent/action out of range");
  }
  const auto strides = index_strides(game);
  std::int64_t sum = 0;
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(emp.counts.size()); ++k) {
    if ((k / strides[agent]) % game.action_counts[agent] == action) sum += emp.counts[k];
  }
  return sum;
}

double marginal(const EmpiricalTheta& emp, const GameSpec& game, int agent, int action) {
  if (emp.t == 0) throw PreconditionError("marginal undefined at t = 0");
  return static_cast<double>(marginal_count(emp, game, agent, action)) /
         static_cast<double>(emp.t);
}

double sup_error(const EmpiricalTheta& emp, const GameSpec& game, double epsilon) {
  if (emp.t == 0) throw PreconditionError("sup_error undefined at t = 0");
  const auto exact = theta_table(game, epsilon);
  double sup = 0.0;
  for (std::size_t k = 0; k < emp.counts.size(); ++k) {
    const double hat = static_cast<double>(emp.counts[k]) / static_cast<double>(emp.t);
    sup = std::max(sup, std::abs(hat - exact[k]));
  }
  return sup;
}

double hoeffding_envelope(std::int64_t K, double xi, std::int64_t M) {
  if (K < 1 || !(xi > 0.0) || M < 1) {
    throw PreconditionError("hoeffding_envelope needs K >= 1, xi > 0, M >= 1");
  }
  return std::min(1.0, 2.0 * static_cast<double>(M) * std::exp(-2.0 * K * xi * xi));
}

std::int64_t argmax_theta_hat(const EmpiricalTheta& emp) {
  std::int64_t best = 0;
  for (std::int64_t k = 1; k < static_cast<std::int64_t>(emp.counts.size()); ++k) {
    if (emp.counts[k] > emp.counts[best]) best = k;
  }
  return best;
}

void merge(EmpiricalTheta& into, const EmpiricalTheta& from) {
  if (into.counts.size() != from.counts.size()) {
    throw PreconditionError("merge: mismatched joint action spaces");
  }
  for (std::size_t k = 0; k < into.counts.size(); ++k) into.counts[k] += from.counts[k];
  into.t += from.t;
}

void write_empirical_csv(const EmpiricalTheta& emp, const GameSpec& game, double epsilon,
                         std::ostream& out) {
  const auto exact = theta_table(game, epsilon);
  out << "joint_index,count,theta_hat,theta,abs_error\n";
  for (std::size_t k = 0; k < emp.counts.size(); ++k) {
    const double hat =
        emp.t > 0 ? static_cast<double>(emp.counts[k]) / static_cast<double>(emp.t) : 0.0;
    out << k << ',' << emp.counts[k] << ',' << format_double(hat) << ','
        << format_double(exact[k]) << ',' << format_double(std::abs(hat - exact[k])) << '\n';
  }
}

}  // namespace sbcpe
