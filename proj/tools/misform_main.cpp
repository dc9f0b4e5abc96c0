#include <string>
#include <vector>

#include "misform/cli.hpp"

int main(int argc, char** argv) {
  return misform::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
