#include <iostream>

#include "pfaffcheck/cli.hpp"

int main(int argc, char** argv) {
  return pfaffcheck::cli::run(argc, argv, std::cout, std::cerr, pfaffcheck::cli::stdout_is_tty());
}
