#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbcpe/errors.hpp"

namespace sbcpe {

// Index vector (a_1, ..., a_n), entry i in [0, action_counts[i]).
using JointAction = std::vector<int>;

// A finite n-agent game with weighted utilities and per-agent feasibility
// thresholds. Utilities live in one dense row-major tensor:
// utilities[agent * num_joint_actions() + joint_index].
struct GameSpec {
  int n = 0;
  std::vector<int> action_counts;
  std::vector<double> weights;
  std::vector<double> thresholds;
  std::vector<double> utilities;

  std::int64_t num_joint_actions() const;

  double utility(int agent, std::int64_t joint) const {
    return utilities[static_cast<std::size_t>(agent) * num_joint_actions() + joint];
  }
};

// Bijection between joint actions and [0, |A|), row-major with agent 0 most
// significant: k = sum_i a_i * prod_{j>i} |A_j|.
std::int64_t joint_index(const GameSpec& game, const JointAction& a);
JointAction joint_from_index(const GameSpec& game, std::int64_t k);
std::vector<std::int64_t> index_strides(const GameSpec& game);

// W(a) = sum_i w_i * u_i(a).
double welfare(const GameSpec& game, const JointAction& a);
double welfare_at(const GameSpec& game, std::int64_t joint);
std::vector<double> welfare_table(const GameSpec& game);

// True iff u_i(a) > lambda_i for every agent (strict).
bool is_feasible(const GameSpec& game, const JointAction& a);
bool is_feasible_at(const GameSpec& game, std::int64_t joint);
std::vector<std::uint8_t> feasible_mask(const GameSpec& game);

// All agents get m actions, weight `weight`, threshold `threshold`; each
// u_i(a) is an independent uniform draw on [0,1) from the substream
// derive_stream(seed, stream::kUtilities), filled agent-major in joint_index
// order. Identical inputs give bit-identical tensors on every platform.
GameSpec random_game(int n, int m, std::uint64_t seed, double weight = 1.0,
                     double threshold = 0.2);

// Empty result means the game is structurally consistent, has positive
// weights, and satisfies w_i * u_i(a) < 1 everywhere. Violations are
// returned, never thrown.
std::vector<std::string> validate(const GameSpec& game);

// Throws ValidationError listing every violation. Entry gate for the
// dynamics: games breaking w_i*u_i(a) < 1 are rejected, not clamped.
void require_valid(const GameSpec& game);

// JSON file format:
// {"n", "action_counts", "weights", "thresholds",
//  "utilities": [[u_0(a) in joint_index order], ..., [u_{n-1}(a) ...]]}
GameSpec game_from_json(const std::string& text);
std::string game_to_json(const GameSpec& game);
GameSpec load_game(const std::string& path);
void save_game(const GameSpec& game, const std::string& path);

}  // namespace sbcpe
