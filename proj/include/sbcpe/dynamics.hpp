#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbcpe/empirical.hpp"
#include "sbcpe/game.hpp"
#include "sbcpe/rng.hpp"

namespace sbcpe {

// One agent of the dynamics. The class is the information boundary: in base
// mode an agent sees only its own parameters, its own realized utility, and
// the unanimity bit. It holds no handle to the game or to other agents.
class Agent {
 public:
  Agent(int id, double weight, double threshold, double epsilon, int num_actions,
        std::uint64_t action_seed, std::uint64_t message_seed);

  int id() const { return id_; }
  double weight() const { return weight_; }
  double threshold() const { return threshold_; }
  double epsilon() const { return epsilon_; }
  int num_actions() const { return static_cast<int>(counters_.size()); }

  // One uniform draw from the action substream.
  int draw_action();

  // Base message rule: returns 1{utility > threshold} with probability
  // eps^{1 - w*utility}, else 0. Exactly one Bernoulli draw is consumed per
  // call regardless of outcome. Throws ValidationError if the probability
  // exceeds 1 (w*u >= ... the game broke the standing assumption).
  int sample_message(double own_utility);

  // Same draw law with the satisfaction indicator and content probability
  // supplied by the caller; sample_message and the best-response rule both
  // reduce to this.
  int gated_signal(bool satisfied, double content_prob);

  // Counter update after the broadcast: c_i(own_action) += 1 iff unanimous.
  void observe_round(int own_action, bool unanimous);

  // Smallest action index attaining the maximal counter. Callable once.
  int commit();
  bool has_committed() const { return committed_.has_value(); }
  int committed_action() const;

  const std::vector<std::int64_t>& counters() const { return counters_; }

 private:
  int id_;
  double weight_;
  double threshold_;
  double epsilon_;
  std::vector<std::int64_t> counters_;
  Rng action_rng_;
  Rng message_rng_;
  std::optional<int> committed_;
};

// Agent i's substreams: derive_stream(run_seed, kAction, i) and
// derive_stream(run_seed, kMessage, i).
std::vector<Agent> make_agents(const GameSpec& game, double epsilon,
                               std::uint64_t run_seed);

// Free-function form of the base rule.
int sample_message(Agent& agent, double own_utility);

// Discussion-remark variant: the satisfaction indicator is membership of the
// agent's own action in its best-response set against a_{-i} (ties within
// 1e-12), gated by the same Bernoulli. Needs read access to the joint action.
int sample_message_br(Agent& agent, const GameSpec& game, const JointAction& joint);

struct RoundRecord {
  std::int64_t t = 0;
  JointAction joint;
  std::int64_t joint_index = -1;
  std::vector<double> utilities;
  std::vector<std::uint8_t> messages;
  bool unanimous = false;
};

// One exploration round: uniform action draws in agent order, utility lookup,
// messages in agent order, unanimity product, counter updates.
RoundRecord explore_round(std::vector<Agent>& agents, const GameSpec& game,
                          bool br_variant = false, std::int64_t t = 0);

// RoundRecord overload of the estimator update; rejects out-of-order rounds.
void update(EmpiricalTheta& emp, const RoundRecord& round);

struct RunConfig {
  std::int64_t exploration_rounds = 0;  // K
  std::int64_t horizon = 0;             // T
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  bool br_variant = false;
  bool record_rounds = false;    // keep every exploration RoundRecord
  bool track_empirical = false;  // maintain the omniscient estimator
};

struct RunTrace {
  RunConfig config;
  std::vector<RoundRecord> rounds;  // nonempty only if config.record_rounds
  JointAction committed_joint;
  std::vector<double> welfare_per_stage;          // length T
  std::vector<std::uint8_t> unanimous_per_stage;  // length T; 0 past round K
  // NaN when the feasible set is empty (regret undefined there).
  double realized_regret = 0.0;
  std::vector<std::vector<std::int64_t>> final_counters;  // per agent
  EmpiricalTheta empirical;  // populated only if config.track_empirical
};

// Algorithm end to end: K exploration rounds, commit, T-K exploitation
// stages. Fully deterministic given (game, config).
RunTrace run(const GameSpec& game, const RunConfig& config);

// R_T = T * max_{feasible} W - sum_t W(a^t). Throws when no feasible action
// exists.
double realized_regret(const GameSpec& game, const RunTrace& trace);

std::string trace_to_json(const RunTrace& trace, bool include_stages = true);

// CSV rows t,welfare,unanimous. Messages only exist during exploration;
// exploitation rows carry unanimous = 0.
void write_stage_csv(const RunTrace& trace, std::ostream& out);

}  // namespace sbcpe
