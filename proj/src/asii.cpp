#include <aseriation/asii.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace aseriation {

const char* to_string(TestOutcome b)
{
	switch (b) {
	case TestOutcome::Left: return "left";
	case TestOutcome::Middle: return "middle";
	case TestOutcome::Right: return "right";
	}
	return "?";
}

const char* to_string(BbsAction a)
{
	switch (a) {
	case BbsAction::Backtrack: return "backtrack";
	case BbsAction::DescendLeft: return "descend-left";
	case BbsAction::DescendRight: return "descend-right";
	case BbsAction::Hold: return "hold";
	}
	return "?";
}

TestOutcome decide(double m_lr, double m_kl, double m_kr)
{
	if (m_lr < std::min(m_kl, m_kr))
		return TestOutcome::Middle;
	if (m_kl > m_kr)
		return TestOutcome::Left;
	return TestOutcome::Right;
}

TestOutcome test(Oracle& oracle, Item k, Item l, Item r, std::uint64_t t0)
{
	if (k == l || k == r || l == r)
		throw SelfPairError("test: items must be pairwise distinct");
	const std::uint64_t per_pair = t0 / 3;
	if (per_pair == 0)
		throw DegenerateBudgetError("test: floor(t0/3) is zero");
	const double m_lr = oracle.sample_mean(l, r, per_pair);
	const double m_kl = oracle.sample_mean(k, l, per_pair);
	const double m_kr = oracle.sample_mean(k, r, per_pair);
	return decide(m_lr, m_kl, m_kr);
}

std::size_t ceil_log2(std::size_t k)
{
	if (k <= 1)
		return 0;
	return static_cast<std::size_t>(std::bit_width(k - 1));
}

// ---------------------------------------------------------------------------

void IntervalStack::pop()
{
	if (entries_.size() <= 1)
		throw std::logic_error("IntervalStack: the root interval cannot be removed");
	entries_.pop_back();
}

bool IntervalStack::nested(const Ordering& order) const
{
	for (std::size_t w = 1; w < entries_.size(); ++w) {
		const auto& outer = entries_[w - 1];
		const auto& inner = entries_[w];
		if (order.rank_of(inner.left) < order.rank_of(outer.left) ||
		    order.rank_of(inner.right) > order.rank_of(outer.right))
			return false;
	}
	return true;
}

// ---------------------------------------------------------------------------

BbsResult binary_backtracking_search(const Ordering& order, Item k, const TestFn& test_fn,
                                     const BbsOptions& options)
{
	if (order.size() < 2)
		throw std::invalid_argument("binary_backtracking_search: need at least two ranked items");
	if (order.contains(k))
		throw std::invalid_argument("binary_backtracking_search: item already ranked");

	const std::size_t k_size = order.size() + 1;
	const std::size_t log_k = ceil_log2(k_size);
	const std::size_t iterations = 3 * log_k;

	IntervalStack stack({order.first(), order.last()});
	BbsResult res;
	res.iterations = iterations;

	const bool instrument = options.record_trace && options.truth != nullptr;
	auto contains_k = [&](const Interval& iv) {
		const Rank tk = options.truth->rank(k);
		const Rank tl = options.truth->rank(iv.left);
		const Rank tr = options.truth->rank(iv.right);
		return std::min(tl, tr) < tk && tk < std::max(tl, tr);
	};
	auto last_good = [&]() -> std::optional<std::size_t> {
		for (std::size_t w = stack.depth() + 1; w-- > 0;)
			if (contains_k(stack[w]))
				return w;
		return std::nullopt;
	};
	auto potential = [&](std::optional<std::size_t> w) -> std::optional<long long> {
		if (!w)
			return std::nullopt;
		return static_cast<long long>(stack.depth()) + static_cast<long long>(log_k) -
		       2 * static_cast<long long>(*w);
	};

	if (options.record_trace) {
		res.trace.emplace();
		res.trace->steps.reserve(iterations);
		if (instrument) {
			res.trace->initial_last_good = last_good();
			res.trace->initial_potential = potential(res.trace->initial_last_good);
		}
	}

	for (std::size_t t = 1; t <= iterations; ++t) {
		const Interval cur = stack.active();
		BbsAction action;

		bool backtrack = false;
		if (stack.depth() >= 1) {
			++res.tests;
			backtrack = test_fn(k, cur.left, cur.right) != TestOutcome::Middle;
		}

		if (backtrack) {
			stack.pop();
			++res.backtracks;
			action = BbsAction::Backtrack;
		} else {
			const Rank rl = order.rank_of(cur.left);
			const Rank rr = order.rank_of(cur.right);
			Interval next = cur;
			if (rr - rl <= 1) {
				action = BbsAction::Hold;
			} else {
				const Item mid = order.at_rank((rl + rr) / 2);
				++res.tests;
				if (test_fn(k, cur.left, mid) == TestOutcome::Middle) {
					next = {cur.left, mid};
					action = BbsAction::DescendLeft;
				} else {
					next = {mid, cur.right};
					action = BbsAction::DescendRight;
				}
			}
			if (order.rank_of(next.left) < rl || order.rank_of(next.right) > rr)
				res.nested = false;
			stack.push(next);
		}

		if (options.record_trace) {
			BbsStep step{t, action, stack.depth(), std::nullopt, std::nullopt};
			if (instrument) {
				step.last_good = last_good();
				step.potential = potential(step.last_good);
			}
			res.trace->steps.push_back(step);
		}
	}

	res.final_interval = stack.active();
	res.position = order.rank_of(res.final_interval.left) + 1;
	return res;
}

std::uint64_t bbs_test_budget(std::uint64_t budget_T, std::size_t n_tilde, std::size_t order_size)
{
	const std::uint64_t denom = 3ULL * n_tilde * bbs_iterations(order_size + 1);
	return denom == 0 ? 0 : budget_T / denom;
}

SearchOutcome bbs(Oracle& oracle, const Ordering& order, Item k, std::uint64_t budget_T,
                  std::size_t n_tilde, const BbsOptions& options)
{
	SearchOutcome out;
	const std::uint64_t raw = bbs_test_budget(budget_T, n_tilde, order.size());
	out.clamped = raw < 3;
	out.test_budget = std::max<std::uint64_t>(raw, 3);

	const TestFn fn = [&](Item kk, Item l, Item r) {
		return test(oracle, kk, l, r, out.test_budget);
	};
	BbsResult res = binary_backtracking_search(order, k, fn, options);
	out.position = res.position;
	out.tests = res.tests;
	out.trace = std::move(res.trace);
	return out;
}

// ---------------------------------------------------------------------------

InsertionStart insertion_start(std::size_t n, const std::optional<Permutation>& partial)
{
	if (n < 1)
		throw std::invalid_argument("insertion: need at least one item");
	if (partial && partial->size() > n)
		throw DimensionError("insertion: partial ordering covers more items than the matrix");
	if (partial && partial->size() >= 3)
		return {Ordering(n, *partial), n - partial->size()};

	Ordering ord(n);
	ord.insert_at(0, 1);
	if (n >= 2)
		ord.insert_at(1, 2);
	return {std::move(ord), n};
}

namespace {

bool coherent_with(const Ordering& ord, const Permutation& truth)
{
	const auto rel = restrict_to(truth, ord.items());
	return is_recovery_success(rel, Permutation::identity(rel.size()));
}

} // namespace

InsertionResult iterative_insertion(Oracle& oracle, std::uint64_t budget_T,
                                    const std::optional<Permutation>& partial,
                                    const InsertionSearch& search, const Permutation* truth)
{
	const std::size_t n = oracle.size();
	auto [ord, n_tilde] = insertion_start(n, partial);

	InsertionResult res;
	res.n_tilde = n_tilde;
	if (n_tilde > 0) {
		const std::uint64_t raw = budget_T / (3ULL * n_tilde);
		res.budget_clamped = raw < 3;
		res.extremes_test_budget = std::max<std::uint64_t>(raw, 3);
	}

	for (Item k = ord.size(); k < n; ++k) {
		InsertionRecord rec{};
		rec.item = k;

		const auto before = oracle.ledger().total();
		rec.extremes_outcome = test(oracle, k, ord.first(), ord.last(), res.extremes_test_budget);
		rec.extremes_samples = oracle.ledger().total() - before;

		switch (rec.extremes_outcome) {
		case TestOutcome::Left:
			rec.position = 1;
			break;
		case TestOutcome::Right:
			rec.position = ord.size() + 1;
			break;
		case TestOutcome::Middle: {
			const auto mark = oracle.ledger().total();
			SearchOutcome found = search(oracle, ord, k, n_tilde);
			rec.search_samples = oracle.ledger().total() - mark;
			rec.search_tests = found.tests;
			rec.search_test_budget = found.test_budget;
			rec.trace = std::move(found.trace);
			res.budget_clamped = res.budget_clamped || found.clamped;
			rec.position = found.position;
			break;
		}
		}
		ord.insert_at(k, rec.position);
		if (truth)
			rec.coherent = coherent_with(ord, *truth);
		res.insertions.push_back(std::move(rec));
	}

	res.ordering = ord.to_permutation();
	return res;
}

InsertionResult asii(Oracle& oracle, std::uint64_t budget_T, const AsiiOptions& options)
{
	const BbsOptions bbs_opts{options.record_trace, options.truth};
	const InsertionSearch search = [&](Oracle& o, const Ordering& ord, Item k,
	                                   std::size_t n_tilde) {
		return bbs(o, ord, k, budget_T, n_tilde, bbs_opts);
	};
	return iterative_insertion(oracle, budget_T, options.partial, search, options.truth);
}

} // namespace aseriation
