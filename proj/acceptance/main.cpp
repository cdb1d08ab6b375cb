#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  dquant::acceptance::Options opt;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string tok; std::getline(ss, tok, ',');) opt.only.insert(std::stoi(tok));
    } else {
      std::cerr << "usage: dquant_accept [--seed N] [--only 1,2,...]\n";
      return 2;
    }
  }
  bool all = true;
  dquant::acceptance::run(opt, [&](const dquant::acceptance::CriterionResult& r) {
    std::cout << dquant::acceptance::format_line(r) << std::endl;
    all = all && r.pass;
  });
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
