#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monoforms/order.hpp"

namespace monoforms::selftest {

// Deterministic generator (splitmix64) so suites replay identically across
// platforms and standard libraries.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
  uint64_t next_u64() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int next(int bound) { return static_cast<int>(next_u64() % static_cast<uint64_t>(bound)); }
};

PosetPtr random_poset(Rng& rng, int max_size);
PosetMap random_map(Rng& rng, PosetPtr domain, PosetPtr codomain);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// The acceptance criteria. max_n caps the exhaustive boolean sweep (full
// suite at 4); seed drives the random suites.
std::vector<CriterionResult> run_acceptance(int max_n = 4, uint64_t seed = 0);

}  // namespace monoforms::selftest
