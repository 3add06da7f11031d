#include <iostream>

#include "qevap/cli.hpp"

int main(int argc, char** argv) {
  return qevap::main_entry(argc, argv, std::cout, std::cerr);
}
