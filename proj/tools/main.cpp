#include "displace_cli.hpp"

int main(int argc, char** argv) {
  return displace::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
