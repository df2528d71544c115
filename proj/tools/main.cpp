#include <iostream>

#include "ringfwm/cli.hpp"

int main(int argc, char** argv) {
  return ringfwm::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
