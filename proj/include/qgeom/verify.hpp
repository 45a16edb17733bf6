#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgeom {

enum class VerifyLevel { Quick, Full };

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    double worst = 0.0;       // worst observed value of the suite's metric
    double limit = 0.0;       // pass threshold for that metric
    std::string note;         // first failure, if any
};

/// Runs every randomized property suite. Suite k draws from
/// suite_rng(seed, k), so results are reproducible per seed. Quick level
/// shrinks every ensemble five-fold.
std::vector<SuiteResult> run_verification(std::uint64_t seed, VerifyLevel level);

} // namespace qgeom
