/// @file  rng.hpp
/// @brief Portable pseudo-random streams.
///
/// Every stream is xoshiro256** (Blackman & Vigna) seeded by expanding a
/// 64-bit seed through SplitMix64. Derived quantities are fixed here so that
/// other implementations can reproduce streams bit for bit:
///
///   uniform()  = (next() >> 11) * 2^-53                       in [0, 1)
///   normal()   = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)           u1 drawn first
///   below(m)   = rejection on the top bits of next()          in [0, m)
///
/// normal() consumes exactly two outputs and caches nothing.

#pragma once

#include <aseriation/core.hpp>

#include <array>
#include <cstdint>

namespace aseriation {

/// One SplitMix64 step: advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic combination of a seed with one more value.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

class Rng {
public:
	explicit Rng(std::uint64_t seed);

	std::uint64_t next();
	double uniform();
	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
	double normal();
	std::uint64_t below(std::uint64_t m);

private:
	std::array<std::uint64_t, 4> s_;
};

/// Uniformly random permutation of n items (Fisher-Yates driven by below()).
Permutation random_permutation(std::size_t n, Rng& rng);

} // namespace aseriation
