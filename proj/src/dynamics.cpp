#include "sbcpe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sbcpe/format.hpp"
#include "sbcpe/oracle.hpp"
#include <json.hpp>

namespace sbcpe {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw PreconditionError("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
}

constexpr double kBrTieTolerance = 1e-12;

// mask[agent * |A| + joint] = 1 iff the agent's own action at that joint is a
// best response to the others' actions (within tolerance).
std::vector<std::uint8_t> best_response_mask(const GameSpec& game) {
  const std::int64_t total = game.num_joint_actions();
  const auto strides = index_strides(game);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(game.n) * total, 0);
  for (int i = 0; i < game.n; ++i) {
    const std::int64_t stride = strides[i];
    const int count = game.action_counts[i];
    for (std::int64_t k = 0; k < total; ++k) {
      const std::int64_t base = k - (k / stride) % count * stride;
      double best = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < count; ++b) {
        best = std::max(best, game.utility(i, base + b * stride));
      }
      mask[static_cast<std::size_t>(i) * total + k] =
          game.utility(i, k) >= best - kBrTieTolerance;
    }
  }
  return mask;
}

}  // namespace

Agent::Agent(int id, double weight, double threshold, double epsilon, int num_actions,
             std::uint64_t action_seed, std::uint64_t message_seed)
    : id_(id),
      weight_(weight),
      threshold_(threshold),
      epsilon_(epsilon),
      counters_(num_actions, 0),
      action_rng_(action_seed),
      message_rng_(message_seed) {
  check_epsilon(epsilon);
  if (num_actions < 1) throw PreconditionError("agent needs at least one action");
}

int Agent::draw_action() { return action_rng_.next_below(num_actions()); }

int Agent::gated_signal(bool satisfied, double content_prob) {
  if (content_prob > 1.0) {
    throw ValidationError("message probability " + std::to_string(content_prob) +
                          " exceeds 1; the game violates w_i*u_i(a) < 1");
  }
  const bool drawn = message_rng_.bernoulli(content_prob);
  return (satisfied && drawn) ? 1 : 0;
}

int Agent::sample_message(double own_utility) {
  const double p = std::pow(epsilon_, 1.0 - weight_ * own_utility);
  return gated_signal(own_utility > threshold_, p);
}

void Agent::observe_round(int own_action, bool unanimous) {
  if (own_action < 0 || own_action >= num_actions()) {
    throw InvalidActionError("observe_round: own action out of range");
  }
  if (unanimous) ++counters_[own_action];
}

int Agent::commit() {
  if (committed_) throw PreconditionError("agent already committed");
  int best = 0;
  for (int a = 1; a < num_actions(); ++a) {
    if (counters_[a] > counters_[best]) best = a;
  }
  committed_ = best;
  return best;
}

int Agent::committed_action() const {
  if (!committed_) throw PreconditionError("agent has not committed");
  return *committed_;
}

std::vector<Agent> make_agents(const GameSpec& game, double epsilon,
                               std::uint64_t run_seed) {
  std::vector<Agent> agents;
  agents.reserve(game.n);
  for (int i = 0; i < game.n; ++i) {
    agents.emplace_back(i, game.weights[i], game.thresholds[i], epsilon,
                        game.action_counts[i],
                        derive_stream(run_seed, stream::kAction, i),
                        derive_stream(run_seed, stream::kMessage, i));
  }
  return agents;
}

int sample_message(Agent& agent, double own_utility) {
  return agent.sample_message(own_utility);
}

int sample_message_br(Agent& agent, const GameSpec& game, const JointAction& joint) {
  const std::int64_t k = joint_index(game, joint);
  const int i = agent.id();
  const auto strides = index_strides(game);
  const std::int64_t base = k - static_cast<std::int64_t>(joint[i]) * strides[i];
  double best = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < game.action_counts[i]; ++b) {
    best = std::max(best, game.utility(i, base + b * strides[i]));
  }
  const double own = game.utility(i, k);
  const double p = std::pow(agent.epsilon(), 1.0 - agent.weight() * own);
  return agent.gated_signal(own >= best - kBrTieTolerance, p);
}

RoundRecord explore_round(std::vector<Agent>& agents, const GameSpec& game,
                          bool br_variant, std::int64_t t) {
  const int n = game.n;
  RoundRecord rec;
  rec.t = t;
  rec.joint.resize(n);
  for (int i = 0; i < n; ++i) {
    if (agents[i].has_committed()) {
      throw PreconditionError("explore_round called with a committed agent");
    }
    rec.joint[i] = agents[i].draw_action();
  }
  rec.joint_index = joint_index(game, rec.joint);
  rec.utilities.resize(n);
  rec.messages.resize(n);
  bool unanimous = true;
  for (int i = 0; i < n; ++i) {
    rec.utilities[i] = game.utility(i, rec.joint_index);
    const int m = br_variant ? sample_message_br(agents[i], game, rec.joint)
                             : agents[i].sample_message(rec.utilities[i]);
    rec.messages[i] = static_cast<std::uint8_t>(m);
    unanimous = unanimous && (m == 1);
  }
  for (int i = 0; i < n; ++i) agents[i].observe_round(rec.joint[i], unanimous);
  rec.unanimous = unanimous;
  return rec;
}

void update(EmpiricalTheta& emp, const RoundRecord& round) {
  if (round.t != emp.t + 1) {
    throw PreconditionError("out-of-order round: expected t = " + std::to_string(emp.t + 1) +
                            ", got " + std::to_string(round.t));
  }
  observe(emp, round.joint_index, round.unanimous);
}

RunTrace run(const GameSpec& game, const RunConfig& config) {
  require_valid(game);
  check_epsilon(config.epsilon);
  const std::int64_t K = config.exploration_rounds;
  const std::int64_t T = config.horizon;
  if (K < 1 || K > T) {
    throw PreconditionError("run needs 1 <= K <= T, got K = " + std::to_string(K) +
                            ", T = " + std::to_string(T));
  }

  const int n = game.n;
  const std::int64_t total = game.num_joint_actions();
  const auto welfare = welfare_table(game);
  auto agents = make_agents(game, config.epsilon, config.seed);

  // Same probabilities sample_message would compute, cached per (agent, joint).
  std::vector<double> content(static_cast<std::size_t>(n) * total);
  for (int i = 0; i < n; ++i) {
    for (std::int64_t k = 0; k < total; ++k) {
      content[static_cast<std::size_t>(i) * total + k] =
          std::pow(config.epsilon, 1.0 - game.weights[i] * game.utility(i, k));
    }
  }
  std::vector<std::uint8_t> br;
  if (config.br_variant) br = best_response_mask(game);

  RunTrace trace;
  trace.config = config;
  trace.welfare_per_stage.assign(T, 0.0);
  trace.unanimous_per_stage.assign(T, 0);
  if (config.track_empirical) trace.empirical = make_empirical(game);
  if (config.record_rounds) trace.rounds.reserve(K);

  JointAction joint(n);
  std::vector<double> utils(n);
  std::vector<std::uint8_t> msgs(n);
  for (std::int64_t t = 1; t <= K; ++t) {
    std::int64_t k = 0;
    for (int i = 0; i < n; ++i) {
      joint[i] = agents[i].draw_action();
      k = k * game.action_counts[i] + joint[i];
    }
    bool unanimous = true;
    for (int i = 0; i < n; ++i) {
      utils[i] = game.utility(i, k);
      const bool satisfied = config.br_variant
                                 ? br[static_cast<std::size_t>(i) * total + k] != 0
                                 : utils[i] > game.thresholds[i];
      const int m =
          agents[i].gated_signal(satisfied, content[static_cast<std::size_t>(i) * total + k]);
      msgs[i] = static_cast<std::uint8_t>(m);
      unanimous = unanimous && (m == 1);
    }
    for (int i = 0; i < n; ++i) agents[i].observe_round(joint[i], unanimous);
    trace.welfare_per_stage[t - 1] = welfare[k];
    trace.unanimous_per_stage[t - 1] = unanimous;
    if (config.track_empirical) observe(trace.empirical, k, unanimous);
    if (config.record_rounds) {
      trace.rounds.push_back(RoundRecord{t, joint, k, utils, msgs, unanimous});
    }
  }

  trace.committed_joint.resize(n);
  for (int i = 0; i < n; ++i) trace.committed_joint[i] = agents[i].commit();
  const double committed_welfare = welfare[joint_index(game, trace.committed_joint)];
  for (std::int64_t t = K + 1; t <= T; ++t) {
    trace.welfare_per_stage[t - 1] = committed_welfare;
  }
  trace.final_counters.reserve(n);
  for (int i = 0; i < n; ++i) trace.final_counters.push_back(agents[i].counters());

  const auto report = solve(game);
  if (report.M > 0) {
    double played = 0.0;
    for (double w : trace.welfare_per_stage) played += w;
    trace.realized_regret = static_cast<double>(T) * report.w_star - played;
  } else {
    trace.realized_regret = std::numeric_limits<double>::quiet_NaN();
  }
  return trace;
}

double realized_regret(const GameSpec& game, const RunTrace& trace) {
  const auto report = solve(game);
  if (report.M == 0) {
    throw EmptyFeasibleSetError("realized_regret undefined: no feasible action");
  }
  double played = 0.0;
  for (double w : trace.welfare_per_stage) played += w;
  return static_cast<double>(trace.welfare_per_stage.size()) * report.w_star - played;
}

std::string trace_to_json(const RunTrace& trace, bool include_stages) {
  nlohmann::json j;
  j["config"] = {{"K", trace.config.exploration_rounds},
                 {"T", trace.config.horizon},
                 {"epsilon", trace.config.epsilon},
                 {"seed", trace.config.seed},
                 {"br_variant", trace.config.br_variant}};
  j["committed_joint"] = trace.committed_joint;
  j["realized_regret"] = std::isnan(trace.realized_regret)
                             ? nlohmann::json(nullptr)
                             : nlohmann::json(trace.realized_regret);
  j["final_counters"] = trace.final_counters;
  if (include_stages) {
    j["welfare_per_stage"] = trace.welfare_per_stage;
    j["unanimous_per_stage"] = trace.unanimous_per_stage;
  }
  if (!trace.rounds.empty()) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : trace.rounds) {
      rounds.push_back({{"t", r.t},
                        {"joint", r.joint},
                        {"utilities", r.utilities},
                        {"messages", r.messages},
                        {"unanimous", r.unanimous}});
    }
    j["rounds"] = std::move(rounds);
  }
  return j.dump();
}

void write_stage_csv(const RunTrace& trace, std::ostream& out) {
  out << "t,welfare,unanimous\n";
  for (std::size_t t = 0; t < trace.welfare_per_stage.size(); ++t) {
    out << (t + 1) << ',' << format_double(trace.welfare_per_stage[t]) << ','
        << static_cast<int>(trace.unanimous_per_stage[t]) << '\n';
  }
}

}  // namespace sbcpe
