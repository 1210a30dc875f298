#include <aseriation/asii.hpp>
#include <aseriation/scenarios.hpp>

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace aseriation;

namespace {

SimilarityMatrix scenario(ScenarioId id, std::size_t n, double delta, std::uint64_t seed = 0)
{
	ScenarioSpec spec;
	spec.id = id;
	spec.n = n;
	spec.delta = delta;
	spec.seed = seed;
	return generate(spec);
}

// Ground-truth three-way outcome from latent ranks.
TestOutcome truthful(const Permutation& truth, Item k, Item l, Item r)
{
	const Rank pk = truth.rank(k), pl = truth.rank(l), pr = truth.rank(r);
	if ((pl < pk && pk < pr) || (pr < pk && pk < pl))
		return TestOutcome::Middle;
	const bool nearer_l = pl < pr ? pk < pl : pk > pl;
	return nearer_l ? TestOutcome::Left : TestOutcome::Right;
}

// Ordering of every item except k, in truth order.
Ordering without(const Permutation& truth, Item k)
{
	Ordering o(truth.size());
	for (Item i : truth.order())
		if (i != k)
			o.insert_at(i, static_cast<Rank>(o.size() + 1));
	return o;
}

// Rank k should receive when spliced into `without(truth, k)`.
Rank true_slot(const Permutation& truth, Item k)
{
	return truth.rank(k);
}

} // namespace

TEST_CASE("decision rule")
{
	CHECK(decide(1, 3, 3) == TestOutcome::Middle);
	CHECK(decide(3, 3, 1) == TestOutcome::Left);
	CHECK(decide(3, 1, 3) == TestOutcome::Right);
	// tie between m_kl and m_kr
	CHECK(decide(5, 2, 2) == TestOutcome::Right);
	// m_lr tied with the smaller mean is not Middle
	CHECK(decide(2, 2, 4) == TestOutcome::Right);
}

TEST_CASE("oracle test on scenario 1")
{
	Oracle o(scenario(ScenarioId::S1, 5, 1.0), NoiseModel::noiseless(), 0);
	CHECK(test(o, 2, 0, 4, 3) == TestOutcome::Middle);
	CHECK(test(o, 0, 2, 4, 3) == TestOutcome::Left);
	CHECK(test(o, 4, 0, 2, 3) == TestOutcome::Right);
	CHECK(o.ledger().total() == 9);
	CHECK(o.ledger().pair_count(0, 4) == 3);
}

TEST_CASE("ceil_log2")
{
	CHECK(ceil_log2(1) == 0);
	CHECK(ceil_log2(2) == 1);
	CHECK(ceil_log2(3) == 2);
	CHECK(ceil_log2(4) == 2);
	CHECK(ceil_log2(5) == 3);
	CHECK(ceil_log2(1024) == 10);
	CHECK(ceil_log2(1025) == 11);
}

TEST_CASE("interval stack")
{
	Ordering o(4, Permutation({1, 2, 3, 4}));
	IntervalStack s({0, 3});
	CHECK(s.depth() == 0);
	CHECK_THROWS_AS(s.pop(), std::logic_error);
	s.push({1, 3});
	s.push({1, 2});
	CHECK(s.nested(o));
	CHECK(s.active() == Interval{1, 2});
	s.push({0, 2});
	CHECK_FALSE(s.nested(o));
	s.pop();
	CHECK(s.depth() == 2);
}

TEST_CASE("BBS per-test budget")
{
	// k = 10, T_k = 12
	CHECK(bbs_test_budget(10000, 10, 9) == 27);
	CHECK(bbs_test_budget(100, 10, 9) == 0);
}

TEST_CASE("BBS with an always-correct test")
{
	const Permutation truth({4, 9, 1, 7, 3, 10, 2, 6, 5, 8});
	for (Item k = 0; k < truth.size(); ++k) {
		if (truth.rank(k) == 1 || truth.rank(k) == truth.size())
			continue;
		CAPTURE(k);
		const Ordering o = without(truth, k);
		BbsOptions opt;
		opt.record_trace = true;
		opt.truth = &truth;
		const BbsResult r = binary_backtracking_search(
		    o, k, [&](Item a, Item b, Item c) { return truthful(truth, a, b, c); }, opt);

		CHECK(r.position == true_slot(truth, k));
		CHECK(r.backtracks == 0);
		CHECK(r.nested);
		CHECK(r.iterations == 3 * ceil_log2(o.size() + 1));
		REQUIRE(r.trace);
		long long prev = *r.trace->initial_potential;
		for (const BbsStep& s : r.trace->steps) {
			REQUIRE(s.potential);
			CHECK(*s.potential <= prev - 1);
			prev = *s.potential;
		}
	}
}

TEST_CASE("BBS recovers from one wrong descent")
{
	const Permutation truth = Permutation::identity(12);
	for (Item k = 1; k + 1 < truth.size(); ++k) {
		CAPTURE(k);
		const Ordering o = without(truth, k);
		bool injected = false;
		const TestFn scripted = [&](Item a, Item b, Item c) {
			const TestOutcome right = truthful(truth, a, b, c);
			if (!injected) {
				injected = true;
				return right == TestOutcome::Middle ? TestOutcome::Left : TestOutcome::Middle;
			}
			return right;
		};
		BbsOptions opt;
		opt.record_trace = true;
		opt.truth = &truth;
		const BbsResult r = binary_backtracking_search(o, k, scripted, opt);
		CHECK(r.position == true_slot(truth, k));
		CHECK(r.nested);
		long long prev = *r.trace->initial_potential;
		for (const BbsStep& s : r.trace->steps) {
			CHECK(*s.potential <= prev + 1);
			prev = *s.potential;
		}
	}
}

TEST_CASE("noiseless BBS through the oracle never backtracks")
{
	Rng rng(21);
	for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3, ScenarioId::S4}) {
		for (std::size_t n = 4; n <= 8; ++n) {
			const Permutation truth = random_permutation(n, rng);
			Oracle o(apply_permutation(scenario(id, n, 0.5, rng.next()), truth),
			         NoiseModel::noiseless(), 0);
			for (Item k = 0; k < n; ++k) {
				if (truth.rank(k) == 1 || truth.rank(k) == n)
					continue;
				CAPTURE(k);
				BbsOptions opt;
				opt.record_trace = true;
				const SearchOutcome s = bbs(o, without(truth, k), k, 100000, n, opt);
				CHECK(s.position == true_slot(truth, k));
				REQUIRE(s.trace);
				for (const BbsStep& st : s.trace->steps)
					CHECK(st.action != BbsAction::Backtrack);
			}
		}
	}
}

TEST_CASE("insertion start")
{
	const auto fresh = insertion_start(6, std::nullopt);
	CHECK(fresh.n_tilde == 6);
	CHECK(fresh.ordering.size() == 2);
	CHECK(fresh.ordering.at_rank(1) == 0);

	const auto small = insertion_start(6, Permutation({2, 1}));
	CHECK(small.n_tilde == 6);

	const auto used = insertion_start(6, Permutation({3, 1, 2}));
	CHECK(used.n_tilde == 3);
	CHECK(used.ordering.at_rank(1) == 1);

	CHECK_THROWS_AS(insertion_start(3, Permutation::identity(4)), DimensionError);
}

TEST_CASE("noiseless ASII is exact")
{
	Rng rng(8);
	for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3, ScenarioId::S4})
		for (int rep = 0; rep < 25; ++rep) {
			const Permutation truth = random_permutation(8, rng);
			Oracle o(apply_permutation(scenario(id, 8, 1.0, rng.next()), truth),
			         NoiseModel::noiseless(), 0);
			AsiiOptions opt;
			opt.truth = &truth;
			const InsertionResult r = asii(o, 100000, opt);
			CHECK(is_recovery_success(r.ordering, truth));
			CHECK(r.ordering.rank(0) < r.ordering.rank(1));
			for (const InsertionRecord& ins : r.insertions)
				CHECK(ins.coherent == true);
		}
}

TEST_CASE("ASII extends a correct partial ordering by one item")
{
	const std::size_t n = 9;
	Rng rng(4);
	for (int rep = 0; rep < 20; ++rep) {
		const Permutation truth = random_permutation(n, rng);
		std::vector<Item> head(n - 1);
		for (Item i = 0; i + 1 < n; ++i)
			head[i] = i;
		const Permutation partial = restrict_to(truth, head);
		Oracle o(apply_permutation(scenario(ScenarioId::S1, n, 1.0), truth),
		         NoiseModel::noiseless(), 0);
		AsiiOptions opt;
		opt.partial = partial;
		const InsertionResult r = asii(o, 10000, opt);
		CHECK(r.n_tilde == 1);
		CHECK(r.insertions.size() == 1);
		CHECK(is_recovery_success(r.ordering, truth));
		CHECK(restrict_to(r.ordering, head) == partial);
	}
}

TEST_CASE("ASII spends at most T")
{
	Rng rng(13);
	for (int rep = 0; rep < 60; ++rep) {
		const std::size_t n = 3 + rng.below(12);
		const std::uint64_t T = 500 + rng.below(20000);
		const Permutation truth = random_permutation(n, rng);
		Oracle o(apply_permutation(scenario(ScenarioId::S4, n, 0.2, rng.next()), truth),
		         NoiseModel::gaussian(1.0), rng.next());
		const InsertionResult r = asii(o, T);
		CAPTURE(n);
		CAPTURE(T);
		if (!r.budget_clamped)
			CHECK(o.ledger().total() <= T);
		CHECK(o.ledger().total() == o.ledger().sum_of_pairs());
	}
}

// The bound concerns searches over a correct ordering; once an insertion has
// gone wrong the intervals no longer nest under the truth.
TEST_CASE("noisy traces keep the potential step bound")
{
	Rng rng(30);
	int checked = 0;
	for (int rep = 0; rep < 20; ++rep) {
		const std::size_t n = 10;
		const Permutation truth = random_permutation(n, rng);
		Oracle o(apply_permutation(scenario(ScenarioId::S1, n, 0.2), truth),
		         NoiseModel::gaussian(1.0), rng.next());
		AsiiOptions opt;
		opt.record_trace = true;
		opt.truth = &truth;
		const InsertionResult r = asii(o, 3000, opt);
		bool coherent_so_far = true;
		for (const InsertionRecord& ins : r.insertions) {
			const bool usable = coherent_so_far && ins.trace && ins.trace->initial_potential;
			coherent_so_far = coherent_so_far && ins.coherent == true;
			if (!usable)
				continue;
			++checked;
			long long prev = *ins.trace->initial_potential;
			for (const BbsStep& s : ins.trace->steps) {
				CHECK(*s.potential <= prev + 1);
				prev = *s.potential;
			}
		}
	}
	CHECK(checked > 20);
}
