#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  try {
    longrun::cli::apply_environment();
  } catch (const std::invalid_argument& e) {
    std::cerr << "longrun: " << e.what() << '\n';
    return longrun::cli::exit_arguments;
  }
  return longrun::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
