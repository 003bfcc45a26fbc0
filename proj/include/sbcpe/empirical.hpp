#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sbcpe/game.hpp"

namespace sbcpe {

// Omniscient-observer counts behind the estimator theta_hat^t(a): one count
// per joint action of rounds where a was played and the unanimity bit was 1.
// Lives outside the agents; they only ever hold their own counters.
struct EmpiricalTheta {
  std::vector<std::int64_t> counts;
  std::int64_t t = 0;
};

EmpiricalTheta make_empirical(const GameSpec& game);

// Core bump: one observed round. counts[joint] rises iff unanimous.
void observe(EmpiricalTheta& emp, std::int64_t joint, bool unanimous);

// theta_hat^t(a) = counts[a] / t.
double theta_hat(const EmpiricalTheta& emp, std::int64_t joint);
std::vector<double> theta_hat_table(const EmpiricalTheta& emp);

// Marginal over joints where agent plays `action`. marginal_count * 1 == the
// agent's own counter c_i(a_i) on any shared trace (exact integers).
std::int64_t marginal_count(const EmpiricalTheta& emp, const GameSpec& game, int agent,
                            int action);
double marginal(const EmpiricalTheta& emp, const GameSpec& game, int agent, int action);

// max_a |theta_hat(a) - theta(a)|.
double sup_error(const EmpiricalTheta& emp, const GameSpec& game, double epsilon);

// Union-bound tail: min(1, 2 M exp(-2 K xi^2)).
double hoeffding_envelope(std::int64_t K, double xi, std::int64_t M);

// Smallest joint index attaining the maximal count.
std::int64_t argmax_theta_hat(const EmpiricalTheta& emp);

// Count-wise addition across independent replicas.
void merge(EmpiricalTheta& into, const EmpiricalTheta& from);

// CSV rows: joint_index,count,theta_hat,theta,abs_error
void write_empirical_csv(const EmpiricalTheta& emp, const GameSpec& game, double epsilon,
                         std::ostream& out);

}  // namespace sbcpe
