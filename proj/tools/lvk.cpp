#include "lvk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const lvk::cli::RunResult r = lvk::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
