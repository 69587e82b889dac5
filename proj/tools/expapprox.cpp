#include "expapprox/cli.hpp"

int main(int argc, char** argv) {
  return expapprox::cli_run({argv + 1, argv + argc});
}
