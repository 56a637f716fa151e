#include <iostream>

#include "k3cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const k3::cli::Outcome outcome = k3::cli::run(args);
  std::cout << outcome.report.dump(2) << '\n';
  return outcome.exit_code;
}
