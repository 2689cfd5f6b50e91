#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psicalc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;  // deterministic given the seed (no wall-clock content)
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

// The eight end-to-end checks behind the `paper-suite` subcommand, in order.
// Each runs on built-in graphs only and is deterministic given the seed.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed = 0);

}  // namespace psicalc
