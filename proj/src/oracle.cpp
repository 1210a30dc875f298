#include <aseriation/oracle.hpp>

#include <cmath>
#include <numeric>
#include <string>

namespace aseriation {

NoiseModel NoiseModel::gaussian(double sigma)
{
	if (!(sigma >= 0.0) || !std::isfinite(sigma))
		throw std::invalid_argument("NoiseModel: sigma must be finite and nonnegative");
	return {NoiseKind::Gaussian, sigma};
}

NoiseModel NoiseModel::bounded_uniform(double sigma)
{
	if (!(sigma >= 0.0) || !std::isfinite(sigma))
		throw std::invalid_argument("NoiseModel: sigma must be finite and nonnegative");
	return {NoiseKind::BoundedUniform, sigma};
}

NoiseModel NoiseModel::from_sigma(double sigma)
{
	return sigma == 0.0 ? noiseless() : gaussian(sigma);
}

std::string_view to_string(NoiseKind kind)
{
	switch (kind) {
	case NoiseKind::Gaussian: return "gaussian";
	case NoiseKind::BoundedUniform: return "bounded-uniform";
	case NoiseKind::Noiseless: return "noiseless";
	}
	return "?";
}

// ---------------------------------------------------------------------------

QueryLedger::QueryLedger(std::size_t n) : n_(n), per_pair_(n * (n ? n - 1 : 0) / 2, 0) {}

std::size_t QueryLedger::index(Item i, Item j) const
{
	if (i > j)
		std::swap(i, j);
	// Row-major strict upper triangle.
	return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t QueryLedger::pair_count(Item i, Item j) const
{
	if (i == j)
		return 0;
	return per_pair_.at(index(i, j));
}

std::uint64_t QueryLedger::sum_of_pairs() const
{
	return std::accumulate(per_pair_.begin(), per_pair_.end(), std::uint64_t{0});
}

void QueryLedger::record(Item i, Item j, std::uint64_t count)
{
	if (i == j)
		throw SelfPairError("QueryLedger: self-pair {" + std::to_string(i) + "," +
		                    std::to_string(i) + "}");
	per_pair_.at(index(i, j)) += count;
	total_ += count;
}

// ---------------------------------------------------------------------------

Oracle::Oracle(std::shared_ptr<const SimilarityMatrix> matrix, NoiseModel noise,
               std::uint64_t seed)
    : matrix_(std::move(matrix)), noise_(noise), rng_(seed), ledger_(matrix_->size())
{
	if (noise_.kind == NoiseKind::Noiseless)
		noise_.sigma = 0.0;
}

Oracle::Oracle(SimilarityMatrix matrix, NoiseModel noise, std::uint64_t seed)
    : Oracle(std::make_shared<const SimilarityMatrix>(std::move(matrix)), noise, seed)
{
}

double Oracle::sample_mean(Item i, Item j, std::uint64_t count)
{
	if (i == j)
		throw SelfPairError("Oracle: cannot sample the self-pair {" + std::to_string(i) +
		                    "," + std::to_string(i) + "}");
	if (count == 0)
		throw DegenerateBudgetError("Oracle: zero samples requested");
	if (i >= size() || j >= size())
		throw std::out_of_range("Oracle: item index out of range");

	const double mean = (*matrix_)(i, j);
	ledger_.record(i, j, count);

	double noise_sum = 0.0;
	switch (noise_.kind) {
	case NoiseKind::Noiseless:
		return mean;
	case NoiseKind::Gaussian:
		for (std::uint64_t c = 0; c < count; ++c)
			noise_sum += rng_.normal();
		break;
	case NoiseKind::BoundedUniform:
		for (std::uint64_t c = 0; c < count; ++c)
			noise_sum += std::sqrt(3.0) * (2.0 * rng_.uniform() - 1.0);
		break;
	}
	return mean + noise_.sigma * noise_sum / static_cast<double>(count);
}

std::int64_t Oracle::remaining_budget(std::int64_t budget_T) const
{
	return budget_T - static_cast<std::int64_t>(ledger_.total());
}

} // namespace aseriation
