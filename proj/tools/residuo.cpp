#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("RESIDUO_SEED")) env_seed = s;
  return residuo::cli::run(argc, argv, std::cout, std::cerr, env_seed);
}
