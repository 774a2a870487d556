// Runs every acceptance criterion and prints one PASS/FAIL line each. The
// exit status is nonzero when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "gapchannel/harness/acceptance.hpp"

int main(int argc, char** argv) {
  gapchannel::harness::AcceptanceOptions opts;
  opts.log = &std::clog;
  if (argc > 1) {
    opts.criteria.clear();
    for (int i = 1; i < argc; ++i) opts.criteria.push_back(std::stoi(argv[i]));
  }
  const auto results = gapchannel::harness::run_acceptance(opts);
  int failed = 0;
  std::cout << "\nacceptance summary\n";
  for (const auto& r : results) {
    std::cout << gapchannel::harness::format_result_line(r) << '\n';
    for (const auto& [k, v] : r.info) std::cout << "    " << k << " = " << gapchannel::harness::format_number(v) << '\n';
    failed += r.pass() ? 0 : 1;
  }
  std::cout << failed << " of " << results.size() << " criteria failed" << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
