/// @file  oracle.hpp
/// @brief The active observation channel: noisy samples of hidden similarities.

#pragma once

#include <aseriation/core.hpp>
#include <aseriation/rng.hpp>

#include <cstdint>
#include <memory>
#include <string_view>

namespace aseriation {

enum class NoiseKind { Gaussian, BoundedUniform, Noiseless };

/// Additive noise on each observation.
///
/// Gaussian draws N(0, sigma^2). BoundedUniform draws from
/// [-sigma*sqrt(3), sigma*sqrt(3)]: variance sigma^2, sub-Gaussian with
/// parameter sigma*sqrt(3). Noiseless has sigma = 0.
struct NoiseModel {
	NoiseKind kind = NoiseKind::Gaussian;
	double sigma = 1.0;

	static NoiseModel gaussian(double sigma);
	static NoiseModel bounded_uniform(double sigma);
	static NoiseModel noiseless() { return {NoiseKind::Noiseless, 0.0}; }

	/// Gaussian for sigma > 0, noiseless for sigma == 0.
	static NoiseModel from_sigma(double sigma);
};

std::string_view to_string(NoiseKind kind);

/// Sample counts, overall and per unordered pair.
class QueryLedger {
public:
	explicit QueryLedger(std::size_t n = 0);

	std::uint64_t total() const { return total_; }
	std::uint64_t pair_count(Item i, Item j) const;
	std::uint64_t sum_of_pairs() const;

	void record(Item i, Item j, std::uint64_t count);

private:
	std::size_t index(Item i, Item j) const;

	std::size_t n_;
	std::uint64_t total_ = 0;
	std::vector<std::uint64_t> per_pair_; // strict upper triangle
};

/// Owns the hidden matrix, the noise stream and the ledger. Not thread-safe;
/// each concurrent run needs its own oracle.
class Oracle {
public:
	Oracle(std::shared_ptr<const SimilarityMatrix> matrix, NoiseModel noise, std::uint64_t seed);
	Oracle(SimilarityMatrix matrix, NoiseModel noise, std::uint64_t seed);

	std::size_t size() const { return matrix_->size(); }
	const NoiseModel& noise() const { return noise_; }
	const QueryLedger& ledger() const { return ledger_; }

	/// Mean of count fresh observations of pair {i,j}. Throws SelfPairError
	/// for i == j and DegenerateBudgetError for count == 0.
	double sample_mean(Item i, Item j, std::uint64_t count);

	/// budget_T minus samples drawn so far; negative once overspent.
	std::int64_t remaining_budget(std::int64_t budget_T) const;

	/// Hidden matrix; for scoring and test fixtures, never for algorithms.
	const SimilarityMatrix& hidden_matrix() const { return *matrix_; }

private:
	std::shared_ptr<const SimilarityMatrix> matrix_;
	NoiseModel noise_;
	Rng rng_;
	QueryLedger ledger_;
};

} // namespace aseriation
