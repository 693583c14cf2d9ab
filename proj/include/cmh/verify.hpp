#pragma once

// Executable property suites behind `cmh verify`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cmh/survey.hpp"

namespace cmh {

struct SuiteResult {
    std::string tag;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool passed() const;
};

const std::vector<std::string>& verify_tags();

// Runs the suites named in `filter` (all when empty), in the order of
// verify_tags(). Throws Error(InvalidArgument) listing the valid tags when a
// name is unknown.
VerifyReport verify_suite(const std::vector<std::string>& filter, std::uint64_t seed,
                          const std::string& catalog_path);

// Random point of H_2 (or H_1) with small rational entries.
SiegelPoint random_siegel_point(std::size_t g, std::mt19937_64& rng, const PrecisionContext& ctx);
// Reduced point whose conditions all hold strictly.
SiegelPoint random_interior_point(std::size_t g, std::mt19937_64& rng, const PrecisionContext& ctx);

// True unless every reduction condition still holds after widening each
// entry of Z by eps.
bool near_boundary(const SiegelPoint& z, double eps);

struct RoundTripStats {
    std::size_t cases = 0, recovered = 0, flagged = 0, mismatched = 0;
    bool finite = true;
    // (log h(Z), log max |gamma_ij|) for cases with both logs positive
    std::vector<std::pair<double, double>> gamma_vs_h;
};
// For every base point, `words` random words of length <= max_len: reduce
// gamma * base and compare with base to 2^-40. A differing result near the
// boundary counts as flagged, any other difference as a mismatch.
RoundTripStats round_trip(const std::vector<SiegelPoint>& bases, std::size_t words, std::size_t max_len,
                          std::mt19937_64& rng);

struct CaseCount {
    std::size_t cases = 0, passed = 0;
    std::string first_failure;
};
// Random GL_2 conjugates g E g* of a diagonal principal form over Z[i] and
// Z[w]; checks the diagonal-dominance bound and det g E' g* = det E exactly.
CaseCount hermitian_cases(std::size_t per_field, std::mt19937_64& rng, const PrecisionContext& ctx);

}  // namespace cmh
