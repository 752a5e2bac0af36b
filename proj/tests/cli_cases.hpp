#pragma once

// Documented CLI invocations with committed JSON outputs in tests/golden.
// Paths are relative to tests/data.

#include "lvk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli_cases {

struct Case {
  std::string name;
  std::vector<std::string> args;
  int status;
};

inline const std::vector<Case>& documented() {
  static const std::vector<Case> cases{
      {"gram_level1", {"gram", "--level", "1", "--b", "1", "--delta", "3/2"}, 0},
      {"gram_level3", {"gram", "--level", "3", "--b", "2/3", "--delta", "1/2"}, 0},
      {"char_order4", {"char", "--delta", "1", "--order", "4"}, 0},
      {"weight_momentum", {"weight", "--b", "1", "--momentum", "1/2"}, 0},
      {"weight_length", {"--precision", "30", "weight", "--b", "1", "--length", "5/2"}, 0},
      {"weight_zero_length", {"weight", "--b", "1", "--length", "0"}, 1},
      {"enumerate_0_5", {"graphs", "enumerate", "--genus", "0", "--tails", "5"}, 0},
      {"enumerate_2_1", {"graphs", "enumerate", "--genus", "2", "--tails", "1"}, 0},
      {"validate_dumbbell", {"graphs", "validate", "--graph", "dumbbell.json"}, 0},
      {"validate_bad_key", {"graphs", "validate", "--graph", "bad_key.json"}, 2},
      {"validate_unstable", {"graphs", "validate", "--graph", "unstable.json"}, 1},
      {"schottky_theta", {"--seed", "7", "schottky", "verify", "--graph", "theta.json", "--samples", "10"}, 0},
      {"block4_order3",
       {"block4", "--b", "1", "--d1", "1/3", "--d2", "1/4", "--d3", "1/5", "--d4", "1/6", "--dbeta", "1/2", "--order",
        "3"},
       0},
      {"block4_grid",
       {"block4", "--b", "1", "--d1", "1/3", "--d2", "1/4", "--d3", "1/5", "--d4", "1/6", "--dbeta-grid",
        "1/2,2/3,3/4,5/4", "--order", "3"},
       0},
      {"block4_singular",
       {"block4", "--b", "1", "--d1", "1", "--d2", "1", "--d3", "1", "--d4", "1", "--dbeta", "0", "--order", "1"},
       1},
      {"torus1_order3", {"torus1", "--b", "1", "--dext", "1/3", "--dbeta", "3/4", "--order", "3"}, 0},
      {"torus1_diagnostic", {"torus1", "--b", "1", "--dbeta", "3/4", "--order", "8", "--diagnostic"}, 0},
      {"wave_small_q", {"wave", "--coeffs", "series.json", "--q", "0.01,0.02", "--winding", "1"}, 0},
      {"moves_1_2", {"moves", "--genus", "1", "--tails", "2"}, 0},
      {"moves_0_5", {"moves", "--genus", "0", "--tails", "5"}, 0},
      {"phase_word", {"phase", "--word", "word.json", "--beta", "beta.json"}, 0},
  };
  return cases;
}

inline std::vector<std::string> with_flags(const Case& c, unsigned threads) {
  std::vector<std::string> args{"--json", "--no-timing", "--threads", std::to_string(threads)};
  args.insert(args.end(), c.args.begin(), c.args.end());
  return args;
}

inline std::filesystem::path golden_path(const Case& c) {
  return std::filesystem::path(LVK_TEST_SOURCE_DIR) / "golden" / (c.name + ".json");
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Run from the data directory so the echoed inputs carry relative paths.
struct DataDirectory {
  std::filesystem::path previous = std::filesystem::current_path();
  DataDirectory() { std::filesystem::current_path(std::filesystem::path(LVK_TEST_SOURCE_DIR) / "data"); }
  ~DataDirectory() { std::filesystem::current_path(previous); }
};

}  // namespace cli_cases
