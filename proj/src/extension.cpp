#include <aseriation/extension.hpp>

#include <algorithm>
#include <string>

namespace aseriation {

const char* to_string(MarginOutcome b)
{
	switch (b) {
	case MarginOutcome::Left: return "left";
	case MarginOutcome::Middle: return "middle";
	case MarginOutcome::Right: return "right";
	case MarginOutcome::Null: return "null";
	}
	return "?";
}

const char* to_string(DiscardReason r)
{
	switch (r) {
	case DiscardReason::FirstTestNull: return "first-test-null";
	case DiscardReason::ValidationFailed: return "validation-failed";
	}
	return "?";
}

MarginOutcome decide_margin(double m_lr, double m_kl, double m_kr, double delta_tilde)
{
	const double h = delta_tilde / 2.0;
	if (m_lr + h < std::min(m_kl, m_kr))
		return MarginOutcome::Middle;
	if (m_kr + h < std::min(m_kl, m_lr))
		return MarginOutcome::Left;
	if (m_kl + h < std::min(m_kr, m_lr))
		return MarginOutcome::Right;
	return MarginOutcome::Null;
}

MarginOutcome test_margin(Oracle& oracle, Item k, Item l, Item r, std::uint64_t t0,
                          double delta_tilde)
{
	if (!(delta_tilde > 0.0))
		throw std::invalid_argument("test_margin: delta_tilde must be positive");
	if (k == l || k == r || l == r)
		throw SelfPairError("test_margin: items must be pairwise distinct");
	const std::uint64_t per_pair = t0 / 3;
	if (per_pair == 0)
		throw DegenerateBudgetError("test_margin: floor(t0/3) is zero");
	const double m_lr = oracle.sample_mean(l, r, per_pair);
	const double m_kl = oracle.sample_mean(k, l, per_pair);
	const double m_kr = oracle.sample_mean(k, r, per_pair);
	return decide_margin(m_lr, m_kl, m_kr, delta_tilde);
}

ExtensionResult asii_extension(Oracle& oracle, std::uint64_t budget_T, double delta_tilde,
                               const std::optional<Permutation>& partial)
{
	if (!(delta_tilde > 0.0))
		throw std::invalid_argument("asii_extension: delta_tilde must be positive");

	const std::size_t n = oracle.size();
	auto [ord, n_tilde] = insertion_start(n, partial);

	ExtensionResult res;
	res.n_tilde = n_tilde;
	res.initial.assign(ord.items().begin(), ord.items().end());

	std::uint64_t t0 = 3;
	if (n_tilde > 0) {
		const std::uint64_t raw = budget_T / (4ULL * n_tilde);
		res.budget_clamped = raw < 3;
		t0 = std::max<std::uint64_t>(raw, 3);
	}

	for (Item k = res.initial.size(); k < n; ++k) {
		const MarginOutcome b = test_margin(oracle, k, ord.first(), ord.last(), t0, delta_tilde);
		switch (b) {
		case MarginOutcome::Null:
			res.discarded.push_back({k, DiscardReason::FirstTestNull});
			break;
		case MarginOutcome::Left:
			ord.insert_at(k, 1);
			break;
		case MarginOutcome::Right:
			ord.insert_at(k, ord.size() + 1);
			break;
		case MarginOutcome::Middle: {
			const SearchOutcome found = bbs(oracle, ord, k, budget_T, n_tilde);
			res.budget_clamped = res.budget_clamped || found.clamped;
			const Rank m = found.position;
			if (m < 2 || m > ord.size()) {
				++res.degenerate_validations;
				res.discarded.push_back({k, DiscardReason::ValidationFailed});
				break;
			}
			const MarginOutcome check = test_margin(oracle, k, ord.at_rank(m - 1), ord.at_rank(m),
			                                        t0, delta_tilde);
			if (check == MarginOutcome::Middle)
				ord.insert_at(k, m);
			else
				res.discarded.push_back({k, DiscardReason::ValidationFailed});
			break;
		}
		}
	}

	res.kept = ord.to_rank_map();
	return res;
}

// ---------------------------------------------------------------------------

bool in_gap_class(const SimilarityMatrix& m, double delta)
{
	bool found = false;
	for_each_robinson_order(m, [&](std::span<const Item> order) {
		if (!found && minimal_gap(m.submatrix(order)).gap >= delta)
			found = true;
	});
	return found;
}

bool verify_delta_maximal(const SimilarityMatrix& m, std::span<const Item> s, double delta)
{
	if (m.size() > kMaximalityMatrixLimit || s.size() > kMaximalitySubsetLimit)
		throw SizeLimitError("verify_delta_maximal: limited to n <= " +
		                     std::to_string(kMaximalityMatrixLimit) + " and |S| <= " +
		                     std::to_string(kMaximalitySubsetLimit));
	std::vector<bool> member(m.size(), false);
	for (Item i : s) {
		if (i >= m.size() || member[i])
			throw std::invalid_argument("verify_delta_maximal: invalid subset");
		member[i] = true;
	}

	std::vector<Item> subset(s.begin(), s.end());
	if (!in_gap_class(m.submatrix(subset), delta))
		return false;
	for (Item k = 0; k < m.size(); ++k) {
		if (member[k])
			continue;
		subset.push_back(k);
		const bool extendable = in_gap_class(m.submatrix(subset), delta);
		subset.pop_back();
		if (extendable)
			return false;
	}
	return true;
}

} // namespace aseriation
