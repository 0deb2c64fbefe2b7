#include <iostream>
#include <string>
#include <vector>

#include "fkk/config.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    std::cerr << fkk::usage();
    return args.empty() ? 2 : 0;
  }
  try {
    return fkk::execute(fkk::parse(args), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fkk::exit_code(e);
  }
}
