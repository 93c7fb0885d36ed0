// verify.hpp - Property-testing suites behind the `verify` subcommand.
// Every randomized trial derives its own seed from the suite seed, and
// failures record that seed for replay. Reports carry no wall-clock data
// so identical configurations serialize identically.

#pragma once

#include "unif/degree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace unif {

struct VerifyFailure {
  std::uint64_t seed = 0;
  std::string diagnostic;
};

struct VerifyReport {
  std::string suite;
  long long trials = 0;
  std::vector<VerifyFailure> failures;
  std::map<std::string, double> stats;
};

// Suites: gcs, vdc, lemma58, lemma64, mu, counting-identity, u2-oracle,
// boxavg-positivity, invertbox-post, increment-planted, rescale-transport.
// `mode` only affects lemma64. Unknown names are rejected.
VerifyReport run_suite(const std::string& name, long long trials, std::uint64_t seed,
                       long long width, ExponentMode mode = ExponentMode::kDerived);

std::vector<std::string> suite_names();

}  // namespace unif
