#include <iostream>

#include "pera/cli.hh"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return pera::run_cli(args, std::cout, std::cerr);
}
