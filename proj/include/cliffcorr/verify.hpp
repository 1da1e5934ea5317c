#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cliffcorr {

/// One named check from a verification sweep.  detail is empty on success
/// and carries the reason on failure.
struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Runs the full consistency sweep over the bundled example corpus: block
/// structures, normality, stability against ideal invariance, the
/// correspondence with its dimension laws and round trips, static checks,
/// stabilizer definition-versus-criterion agreement, and path consistency
/// between the direct and through-stabilizer constructions.  Deterministic
/// for a fixed seed.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);

/// Cross-checks the brute-force oracle against the certified machinery on
/// the bundled corpus: centralizer counts versus block counts, and
/// exhaustive simplicity versus the endomorphism test on every module small
/// enough to enumerate.
std::vector<CheckResult> run_oracle_suite(std::uint64_t seed);

}  // namespace cliffcorr
