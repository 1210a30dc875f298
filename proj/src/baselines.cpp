#include <aseriation/baselines.hpp>

#include <aseriation/errors.hpp>
#include <aseriation/jacobi.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aseriation {

BatchObservation batch_observe(Oracle& oracle, std::uint64_t budget_T)
{
	const std::size_t n = oracle.size();
	const std::uint64_t per_pair = budget_T / (static_cast<std::uint64_t>(n) * n);
	if (per_pair == 0)
		throw DegenerateBudgetError("batch_observe: floor(T/n^2) is zero");
	std::vector<double> y(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			y[i * n + j] = y[j * n + i] = oracle.sample_mean(i, j, per_pair);
	return {SimilarityMatrix(n, std::move(y)), per_pair};
}

SearchOutcome naive_binary_search(const Ordering& order, Item k, const TestFn& test)
{
	SearchOutcome out;
	Item l = order.first();
	Item r = order.last();
	while (order.rank_of(r) - order.rank_of(l) > 1) {
		const Item m = order.at_rank((order.rank_of(l) + order.rank_of(r)) / 2);
		++out.tests;
		if (test(k, l, m) == TestOutcome::Middle)
			r = m;
		else
			l = m;
	}
	out.position = order.rank_of(l) + 1;
	return out;
}

std::uint64_t naive_test_budget(std::uint64_t budget_T, std::size_t n, std::size_t order_size)
{
	const double k = static_cast<double>(order_size + 1);
	return static_cast<std::uint64_t>(
	    std::floor(static_cast<double>(budget_T) / (static_cast<double>(n) * std::log(k))));
}

InsertionResult naive_insertion(Oracle& oracle, std::uint64_t budget_T,
                                const std::optional<Permutation>& partial)
{
	const InsertionSearch search = [budget_T](Oracle& o, const Ordering& ord, Item k,
	                                          std::size_t n_tilde) {
		const std::uint64_t raw = naive_test_budget(budget_T, n_tilde, ord.size());
		const std::uint64_t t0 = std::max<std::uint64_t>(raw, 3);
		SearchOutcome out = naive_binary_search(
		    ord, k, [&](Item a, Item b, Item c) { return test(o, a, b, c, t0); });
		out.test_budget = t0;
		out.clamped = raw < 3;
		return out;
	};
	return iterative_insertion(oracle, budget_T, partial, search);
}

namespace {

double row_distance(const SimilarityMatrix& y, Item a, Item b, RowDistance how)
{
	const std::size_t n = y.size();
	double d = 0.0;
	if (how == RowDistance::Positional) {
		for (std::size_t p = 0; p + 1 < n; ++p)
			d += std::abs(y(a, p < a ? p : p + 1) - y(b, p < b ? p : p + 1));
	} else {
		for (Item c = 0; c < n; ++c)
			if (c != a && c != b)
				d += std::abs(y(a, c) - y(b, c));
	}
	return d;
}

} // namespace

Permutation adaptive_sorting(const BatchObservation& obs, RowDistance distance)
{
	const SimilarityMatrix& y = obs.y;
	const std::size_t n = y.size();
	if (n < 2)
		throw DimensionError("adaptive_sorting: needs at least two items");

	std::vector<bool> taken(n, false);
	std::vector<Item> order;
	order.reserve(n);

	Item first = 0;
	double best = std::numeric_limits<double>::infinity();
	for (Item i = 0; i < n; ++i) {
		double s = 0.0;
		for (Item j = 0; j < n; ++j)
			if (j != i)
				s += y(i, j);
		if (s < best) {
			best = s;
			first = i;
		}
	}
	order.push_back(first);
	taken[first] = true;

	while (order.size() + 1 < n) {
		const Item prev = order.back();
		Item next = n;
		double nearest = std::numeric_limits<double>::infinity();
		for (Item j = 0; j < n; ++j) {
			if (taken[j])
				continue;
			const double d = row_distance(y, j, prev, distance);
			if (next == n || d < nearest) {
				nearest = d;
				next = j;
			}
		}
		order.push_back(next);
		taken[next] = true;
	}
	for (Item j = 0; j < n; ++j)
		if (!taken[j])
			order.push_back(j);
	return Permutation::from_order(order);
}

Permutation spectral_seriation(const BatchObservation& obs)
{
	const SimilarityMatrix& y = obs.y;
	const std::size_t n = y.size();
	if (n < 2)
		throw DimensionError("spectral_seriation: needs at least two items");

	double shift = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			shift = std::min(shift, y(i, j));

	std::vector<double> lap(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i) {
		double deg = 0.0;
		for (std::size_t j = 0; j < n; ++j) {
			if (j == i)
				continue;
			lap[i * n + j] = -(y(i, j) - shift);
			deg += y(i, j) - shift;
		}
		lap[i * n + i] = deg;
	}
	const SymmetricEigen eig = jacobi_eigen(lap, n);
	const std::vector<double> fiedler = eig.vector(1);

	std::vector<Item> order(n);
	std::iota(order.begin(), order.end(), Item{0});
	std::stable_sort(order.begin(), order.end(),
	                 [&](Item a, Item b) { return fiedler[a] < fiedler[b]; });
	return canonical(Permutation::from_order(order));
}

} // namespace aseriation
