#include <aseriation/rng.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

namespace aseriation {

std::uint64_t splitmix64(std::uint64_t& state)
{
	std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value)
{
	std::uint64_t state = seed ^ (value * 0xff51afd7ed558ccdULL);
	return splitmix64(state);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
} // namespace

Rng::Rng(std::uint64_t seed)
{
	for (auto& w : s_)
		w = splitmix64(seed);
}

std::uint64_t Rng::next()
{
	const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
	const std::uint64_t t = s_[1] << 17;
	s_[2] ^= s_[0];
	s_[3] ^= s_[1];
	s_[1] ^= s_[2];
	s_[0] ^= s_[3];
	s_[2] ^= t;
	s_[3] = rotl(s_[3], 45);
	return result;
}

double Rng::uniform()
{
	return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
	const double u1 = 1.0 - uniform(); // (0, 1]
	const double u2 = uniform();
	return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t m)
{
	if (m <= 1)
		return 0;
	// Largest multiple of m that fits; reject the tail to stay unbiased.
	const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
	std::uint64_t x;
	do {
		x = next();
	} while (x >= limit);
	return x % m;
}

Permutation random_permutation(std::size_t n, Rng& rng)
{
	std::vector<Item> order(n);
	std::iota(order.begin(), order.end(), Item{0});
	for (std::size_t i = n; i > 1; --i)
		std::swap(order[i - 1], order[rng.below(i)]);
	return Permutation::from_order(order);
}

} // namespace aseriation
