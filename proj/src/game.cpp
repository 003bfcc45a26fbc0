#include "sbcpe/game.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "sbcpe/rng.hpp"
#include <json.hpp>

namespace sbcpe {

namespace {

void check_action(const GameSpec& game, const JointAction& a) {
  if (static_cast<int>(a.size()) != game.n) {
    throw InvalidActionError("joint action has " + std::to_string(a.size()) +
                             " entries, game has " + std::to_string(game.n) + " agents");
  }
  for (int i = 0; i < game.n; ++i) {
    if (a[i] < 0 || a[i] >= game.action_counts[i]) {
      throw InvalidActionError("action " + std::to_string(a[i]) + " of agent " +
                               std::to_string(i) + " outside [0, " +
                               std::to_string(game.action_counts[i]) + ")");
    }
  }
}

}  // namespace

std::int64_t GameSpec::num_joint_actions() const {
  std::int64_t total = 1;
  for (int c : action_counts) total *= c;
  return total;
}

std::vector<std::int64_t> index_strides(const GameSpec& game) {
  std::vector<std::int64_t> strides(game.n, 1);
  for (int i = game.n - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * game.action_counts[i + 1];
  }
  return strides;
}

std::int64_t joint_index(const GameSpec& game, const JointAction& a) {
  check_action(game, a);
  std::int64_t k = 0;
  for (int i = 0; i < game.n; ++i) {
    k = k * game.action_counts[i] + a[i];
  }
  return k;
}

JointAction joint_from_index(const GameSpec& game, std::int64_t k) {
  if (k < 0 || k >= game.num_joint_actions()) {
    throw InvalidActionError("joint index " + std::to_string(k) + " outside [0, " +
                             std::to_string(game.num_joint_actions()) + ")");
  }
  JointAction a(game.n);
  for (int i = game.n - 1; i >= 0; --i) {
    a[i] = static_cast<int>(k % game.action_counts[i]);
    k /= game.action_counts[i];
  }
  return a;
}

double welfare_at(const GameSpec& game, std::int64_t joint) {
  double w = 0.0;
  for (int i = 0; i < game.n; ++i) {
    w += game.weights[i] * game.utility(i, joint);
  }
  return w;
}

double welfare(const GameSpec& game, const JointAction& a) {
  return welfare_at(game, joint_index(game, a));
}

std::vector<double> welfare_table(const GameSpec& game) {
  const std::int64_t total = game.num_joint_actions();
  std::vector<double> table(total, 0.0);
  for (int i = 0; i < game.n; ++i) {
    const double wi = game.weights[i];
    const double* row = game.utilities.data() + static_cast<std::size_t>(i) * total;
    for (std::int64_t k = 0; k < total; ++k) table[k] += wi * row[k];
  }
  return table;
}

bool is_feasible_at(const GameSpec& game, std::int64_t joint) {
  for (int i = 0; i < game.n; ++i) {
    if (!(game.utility(i, joint) > game.thresholds[i])) return false;
  }
  return true;
}

bool is_feasible(const GameSpec& game, const JointAction& a) {
  return is_feasible_at(game, joint_index(game, a));
}

std::vector<std::uint8_t> feasible_mask(const GameSpec& game) {
  const std::int64_t total = game.num_joint_actions();
  std::vector<std::uint8_t> mask(total, 1);
  for (int i = 0; i < game.n; ++i) {
    const double lam = game.thresholds[i];
    const double* row = game.utilities.data() + static_cast<std::size_t>(i) * total;
    for (std::int64_t k = 0; k < total; ++k) {
      if (!(row[k] > lam)) mask[k] = 0;
    }
  }
  return mask;
}

GameSpec random_game(int n, int m, std::uint64_t seed, double weight, double threshold) {
  if (n < 1 || m < 1) {
    throw PreconditionError("random_game requires n >= 1 and m >= 1");
  }
  if (!(weight > 0.0)) {
    throw PreconditionError("random_game requires weight > 0");
  }
  GameSpec game;
  game.n = n;
  game.action_counts.assign(n, m);
  game.weights.assign(n, weight);
  game.thresholds.assign(n, threshold);
  const std::int64_t total = game.num_joint_actions();
  game.utilities.resize(static_cast<std::size_t>(n) * total);
  Rng rng(derive_stream(seed, stream::kUtilities));
  for (double& u : game.utilities) u = rng.next_unit();
  return game;
}

std::vector<std::string> validate(const GameSpec& game) {
  std::vector<std::string> violations;
  if (game.n < 1) {
    violations.push_back("n must be >= 1, got " + std::to_string(game.n));
    return violations;
  }
  if (static_cast<int>(game.action_counts.size()) != game.n) {
    violations.push_back("action_counts has " + std::to_string(game.action_counts.size()) +
                         " entries, expected " + std::to_string(game.n));
  }
  if (static_cast<int>(game.weights.size()) != game.n) {
    violations.push_back("weights has " + std::to_string(game.weights.size()) +
                         " entries, expected " + std::to_string(game.n));
  }
  if (static_cast<int>(game.thresholds.size()) != game.n) {
    violations.push_back("thresholds has " + std::to_string(game.thresholds.size()) +
                         " entries, expected " + std::to_string(game.n));
  }
  if (!violations.empty()) return violations;

  std::int64_t total = 1;
  for (int i = 0; i < game.n; ++i) {
    if (game.action_counts[i] < 1) {
      violations.push_back("agent " + std::to_string(i) + " has action count " +
                           std::to_string(game.action_counts[i]) + " < 1");
    } else if (total > std::numeric_limits<std::int64_t>::max() / game.action_counts[i]) {
      violations.push_back("joint action space overflows 64-bit index");
      return violations;
    } else {
      total *= game.action_counts[i];
    }
    if (!(game.weights[i] > 0.0)) {
      violations.push_back("agent " + std::to_string(i) + " has non-positive weight");
    }
  }
  if (!violations.empty()) return violations;

  if (static_cast<std::int64_t>(game.utilities.size()) !=
      static_cast<std::int64_t>(game.n) * total) {
    violations.push_back("utilities has " + std::to_string(game.utilities.size()) +
                         " entries, expected " + std::to_string(game.n * total));
    return violations;
  }
  for (int i = 0; i < game.n; ++i) {
    for (std::int64_t k = 0; k < total; ++k) {
      const double wu = game.weights[i] * game.utility(i, k);
      if (!(wu < 1.0)) {
        std::ostringstream os;
        os << "w_i*u_i(a) = " << wu << " >= 1 at agent " << i << ", joint index " << k;
        violations.push_back(os.str());
      }
    }
  }
  return violations;
}

void require_valid(const GameSpec& game) {
  const auto violations = validate(game);
  if (violations.empty()) return;
  std::string msg = "invalid game:";
  for (const auto& v : violations) {
    msg += "\n  - " + v;
  }
  throw ValidationError(msg);
}

GameSpec game_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed game JSON: ") + e.what());
  }
  GameSpec game;
  try {
    game.n = j.at("n").get<int>();
    game.action_counts = j.at("action_counts").get<std::vector<int>>();
    game.weights = j.at("weights").get<std::vector<double>>();
    game.thresholds = j.at("thresholds").get<std::vector<double>>();
    const auto rows = j.at("utilities").get<std::vector<std::vector<double>>>();
    for (const auto& row : rows) {
      game.utilities.insert(game.utilities.end(), row.begin(), row.end());
    }
    if (static_cast<int>(rows.size()) != game.n) {
      throw ValidationError("utilities must have one row per agent");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed game JSON: ") + e.what());
  }
  return game;
}

std::string game_to_json(const GameSpec& game) {
  nlohmann::json j;
  j["n"] = game.n;
  j["action_counts"] = game.action_counts;
  j["weights"] = game.weights;
  j["thresholds"] = game.thresholds;
  const std::int64_t total = game.num_joint_actions();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < game.n; ++i) {
    const auto* begin = game.utilities.data() + static_cast<std::size_t>(i) * total;
    rows.push_back(std::vector<double>(begin, begin + total));
  }
  j["utilities"] = std::move(rows);
  return j.dump();
}

GameSpec load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return game_from_json(buf.str());
}

void save_game(const GameSpec& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write game file: " + path);
  out << game_to_json(game) << "\n";
}

}  // namespace sbcpe
