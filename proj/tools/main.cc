#include <iostream>
#include <string>
#include <vector>

#include "isproc/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isproc::dispatch(args, std::cout, std::cerr);
}
