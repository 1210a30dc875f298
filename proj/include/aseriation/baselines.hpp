/// @file  baselines.hpp
/// @brief Reference methods: insertion without backtracking, and two batch
/// seriation algorithms fed by a uniform spend of the budget.

#pragma once

#include <aseriation/asii.hpp>
#include <aseriation/core.hpp>
#include <aseriation/oracle.hpp>

#include <cstdint>
#include <optional>

namespace aseriation {

/// One averaged noisy matrix, as a batch method would observe it.
struct BatchObservation {
	/// Off-diagonal entries are sample means; the diagonal is zero (unused).
	SimilarityMatrix y;
	std::uint64_t samples_per_pair = 0;
};

/// Samples every pair i < j floor(T / n^2) times. Throws
/// DegenerateBudgetError when that is zero.
BatchObservation batch_observe(Oracle& oracle, std::uint64_t budget_T);

/// Plain binary search for k inside the extremes of order: halves while the
/// active interval spans more than one rank, never backtracks.
SearchOutcome naive_binary_search(const Ordering& order, Item k, const TestFn& test);

/// Per-test budget floor(T / (n ln k)) of the naive search, k = order_size + 1.
std::uint64_t naive_test_budget(std::uint64_t budget_T, std::size_t n, std::size_t order_size);

/// ASII with BBS replaced by naive_binary_search.
InsertionResult naive_insertion(Oracle& oracle, std::uint64_t budget_T,
                                const std::optional<Permutation>& partial = std::nullopt);

/// How two rows are compared by adaptive_sorting.
enum class RowDistance {
	/// Compare only the columns outside both items.
	ExcludeBoth,
	/// Drop each row's own diagonal entry and compare the remaining n-1
	/// entries position by position. Depends on item labels.
	Positional,
};

/// Starts from the smallest off-diagonal row sum, then repeatedly takes the
/// remaining row nearest in L1 to the last one taken. Ties go to the lowest
/// index. The t-th item taken gets rank t. Requires n >= 2.
Permutation adaptive_sorting(const BatchObservation& obs,
                             RowDistance distance = RowDistance::ExcludeBoth);

/// Sorts items by the eigenvector of the second-smallest eigenvalue of
/// L = D - Y, D holding off-diagonal row sums. Y is first shifted so that
/// its smallest off-diagonal entry is at least zero. Stable on ties;
/// returned in canonical orientation. Requires n >= 2.
Permutation spectral_seriation(const BatchObservation& obs);

} // namespace aseriation
