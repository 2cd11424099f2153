#include <iostream>
#include <string>
#include <vector>

#include "critdamp/experiment.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return critdamp::experiment::run_cli(args, std::cout, std::cerr);
}
