#ifndef CREDIT_RANDOM_HPP
#define CREDIT_RANDOM_HPP

#include <cstdint>
#include <random>

namespace credit {

using Engine = std::mt19937_64;

/// One step of the SplitMix64 generator; advances `state`.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/**
 * Counter-based seed for one unit of stochastic work.
 *
 * The four coordinates are folded through SplitMix64 in a fixed order, so a
 * unit's stream depends only on (master, kind, replicate, unit) and never on
 * how units are scheduled across threads or how many replicates exist.
 */
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t kind, std::uint64_t replicate,
                                    std::uint64_t unit) noexcept {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t word : {kind, replicate, unit}) {
    state = h ^ word;
    h = splitmix64(state);
  }
  return h;
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11U) * 0x1.0p-53; }

inline bool bernoulli(Engine& engine, double p) { return uniform01(engine) < p; }

}  // namespace credit

#endif  // CREDIT_RANDOM_HPP
