#include <string>
#include <vector>

#include "exeval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return exeval::cli_main(args);
}
