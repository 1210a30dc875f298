// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <aseriation/asii.hpp>
#include <aseriation/baselines.hpp>
#include <aseriation/extension.hpp>
#include <aseriation/harness.hpp>
#include <aseriation/rng.hpp>
#include <aseriation/scenarios.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace aseriation;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail)
{
	std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
	if (!pass)
		++failures;
}

constexpr ScenarioId kScenarios[] = {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3,
                                     ScenarioId::S4};

SimilarityMatrix make_scenario(ScenarioId id, std::size_t n, double delta, std::uint64_t seed)
{
	ScenarioSpec spec;
	spec.id = id;
	spec.n = n;
	spec.delta = delta;
	spec.seed = seed;
	return generate(spec);
}

// Outcome an error-free comparison would report, from the latent ranks.
TestOutcome true_outcome(const Permutation& truth, Item k, Item l, Item r)
{
	const long tk = static_cast<long>(truth.rank(k));
	const long tl = static_cast<long>(truth.rank(l));
	const long tr = static_cast<long>(truth.rank(r));
	if (std::min(tl, tr) < tk && tk < std::max(tl, tr))
		return TestOutcome::Middle;
	return std::abs(tk - tl) < std::abs(tk - tr) ? TestOutcome::Left : TestOutcome::Right;
}

// Smallest T the noisy guarantees are stated for: 54 n~ ceil(log2 n).
std::uint64_t theorem_budget_floor(std::size_t n)
{
	return 54ULL * n * ceil_log2(n);
}

// ---------------------------------------------------------------------------

void noiseless_exactness()
{
	const auto t0 = Clock::now();
	const std::size_t sizes[] = {3, 5, 8, 15, 30};
	std::size_t runs = 0, ok = 0;
	std::string first_failure;
	Rng rng(20240501);
	for (ScenarioId id : kScenarios)
		for (std::size_t n : sizes)
			for (int rep = 0; rep < 50; ++rep) {
				const SimilarityMatrix r = make_scenario(id, n, 1.0, rng.next());
				const Permutation truth = random_permutation(n, rng);
				const SimilarityMatrix m = apply_permutation(r, truth);
				for (int algo = 0; algo < 2; ++algo) {
					Oracle oracle(m, NoiseModel::noiseless(), rng.next());
					const std::uint64_t budget = 100000;
					const Permutation est = algo == 0 ? asii(oracle, budget).ordering
					                                  : naive_insertion(oracle, budget).ordering;
					++runs;
					if (is_recovery_success(est, truth))
						++ok;
					else if (first_failure.empty())
						first_failure = std::string(" first failure: ") +
						                std::string(to_string(id)) + " n=" + std::to_string(n) +
						                (algo == 0 ? " asii" : " naive");
				}
			}
	const double secs = seconds_since(t0);
	std::ostringstream d;
	d << ok << "/" << runs << " asii+naive runs exact, " << secs << " s (limit 5 s)"
	  << first_failure;
	report("noiseless exactness", ok == runs && secs < 5.0, d.str());
}

void brute_force_equivalence()
{
	std::size_t bf_ok = 0, sp_ok = 0, as_ok = 0;
	const std::size_t draws = 200;
	const double deltas[] = {0.1, 0.5, 1.0, 2.0};
	Rng rng(777);
	for (std::size_t d = 0; d < draws; ++d) {
		const ScenarioId id = kScenarios[rng.below(4)];
		const std::size_t n = 3 + rng.below(6);
		const SimilarityMatrix r = make_scenario(id, n, deltas[rng.below(4)], rng.next());
		const Permutation truth = random_permutation(n, rng);
		const SimilarityMatrix m = apply_permutation(r, truth);

		const auto bf = brute_force_seriate(m);
		const bool bf_good = bf && is_recovery_success(*bf, truth);
		bf_ok += bf_good;

		Oracle oracle(m, NoiseModel::noiseless(), rng.next());
		const BatchObservation obs = batch_observe(oracle, 3 * n * n);
		const Permutation sp = spectral_seriation(obs);
		const Permutation as = adaptive_sorting(obs);
		sp_ok += bf && is_recovery_success(sp, *bf);
		as_ok += bf && is_recovery_success(as, *bf);
	}
	std::ostringstream d;
	d << "brute force recovers " << bf_ok << "/" << draws << ", spectral matches " << sp_ok << "/"
	  << draws << ", adaptive sorting matches " << as_ok << "/" << draws;
	report("brute-force equivalence", bf_ok == draws && sp_ok == draws && as_ok == draws, d.str());
}

void budget_invariant()
{
	const std::size_t runs = 1000;
	const double sigmas[] = {0.0, 0.1, 0.5, 1.0, 2.0};
	std::size_t within = 0, allocation_ok = 0;
	std::string first_failure;
	Rng rng(4242);
	for (std::size_t run = 0; run < runs; ++run) {
		const std::size_t n = 3 + rng.below(28);
		const std::uint64_t floor_T = theorem_budget_floor(n);
		const std::uint64_t budget = floor_T + rng.below(20 * floor_T + 1);
		const double sigma = sigmas[rng.below(5)];
		const ScenarioId id = kScenarios[rng.below(4)];
		const SimilarityMatrix r = make_scenario(id, n, 0.5, rng.next());
		const Permutation truth = random_permutation(n, rng);
		Oracle oracle(apply_permutation(r, truth), NoiseModel::from_sigma(sigma), rng.next());

		const InsertionResult res = asii(oracle, budget);
		within += oracle.ledger().total() <= budget;

		// Allocation recomputed here from T, n~ and the ordering size.
		const std::uint64_t extremes_t0 = budget / (3 * n);
		bool ok = !res.budget_clamped;
		std::uint64_t sum = 0;
		for (const InsertionRecord& rec : res.insertions) {
			const std::size_t order_size = rec.item; // items 0..item-1 are placed
			const std::uint64_t search_t0 = budget / (3 * n * 3 * ceil_log2(order_size + 1));
			ok = ok && rec.extremes_samples == 3 * (extremes_t0 / 3);
			ok = ok && rec.search_samples == rec.search_tests * 3 * (search_t0 / 3);
			sum += rec.extremes_samples + rec.search_samples;
		}
		ok = ok && sum == oracle.ledger().total();
		allocation_ok += ok;
		if (!ok && first_failure.empty())
			first_failure = " first mismatch at run " + std::to_string(run);
	}
	std::ostringstream d;
	d << within << "/" << runs << " runs within T, " << allocation_ok << "/" << runs
	  << " runs match the per-phase allocation" << first_failure;
	report("budget invariant", within == runs && allocation_ok == runs, d.str());
}

// Current ordering: the items other than k listed in latent order.
struct SearchFixture {
	std::size_t n;
	Permutation truth;
	Ordering order;
	Item k;
	Rank correct_position;
};

SearchFixture search_fixture(Rng& rng)
{
	const std::size_t n = 4 + rng.below(27);
	const Permutation truth = random_permutation(n, rng);
	const std::vector<Item> by_rank = truth.order();
	// Strictly inside: latent rank in 2..n-1.
	const Rank k_rank = 2 + rng.below(n - 2);
	const Item k = by_rank[k_rank - 1];
	Ordering order(n);
	for (Item i : by_rank)
		if (i != k)
			order.insert_at(i, order.size() + 1);
	return {n, truth, order, k, k_rank};
}

void bbs_bounds()
{
	const std::size_t runs = 1000;
	std::size_t steps_noisy = 0, c2_bad = 0;
	Rng rng(99);
	for (std::size_t run = 0; run < runs; ++run) {
		SearchFixture f = search_fixture(rng);
		const SimilarityMatrix m = apply_permutation(make_scenario(ScenarioId::S1, f.n, 0.3, 0), f.truth);
		const double sigma = 0.5 + rng.uniform();
		Oracle oracle(m, NoiseModel::gaussian(sigma), rng.next());
		const std::uint64_t t0 = 3 * (1 + rng.below(10));
		const BbsResult res = binary_backtracking_search(
		    f.order, f.k, [&](Item k, Item l, Item r) { return test(oracle, k, l, r, t0); },
		    {true, &f.truth});
		long long prev = *res.trace->initial_potential;
		for (const BbsStep& s : res.trace->steps) {
			++steps_noisy;
			if (!s.potential || *s.potential > prev + 1)
				++c2_bad;
			prev = s.potential.value_or(prev);
		}
	}

	std::size_t steps_exact = 0, c3_bad = 0, wrong_position = 0;
	for (std::size_t run = 0; run < runs; ++run) {
		SearchFixture f = search_fixture(rng);
		const BbsResult res = binary_backtracking_search(
		    f.order, f.k,
		    [&](Item k, Item l, Item r) { return true_outcome(f.truth, k, l, r); },
		    {true, &f.truth});
		long long prev = *res.trace->initial_potential;
		for (const BbsStep& s : res.trace->steps) {
			++steps_exact;
			if (!s.potential || *s.potential > prev - 1)
				++c3_bad;
			prev = s.potential.value_or(prev);
		}
		wrong_position += res.position != f.correct_position;
	}

	std::ostringstream d;
	d << "noisy: " << c2_bad << " of " << steps_noisy << " steps break N_t <= N_{t-1}+1; "
	  << "scripted correct tests: " << c3_bad << " of " << steps_exact
	  << " steps break N_t <= N_{t-1}-1, " << wrong_position << "/" << runs << " wrong positions";
	report("BBS potential bounds", c2_bad == 0 && c3_bad == 0 && wrong_position == 0, d.str());
}

ExperimentConfig s1_config(std::vector<Algorithm> algos, std::vector<double> deltas,
                           std::uint64_t budget, std::size_t reps, std::uint64_t seed)
{
	ExperimentConfig c;
	ScenarioSpec s;
	s.id = ScenarioId::S1;
	c.scenarios = {s};
	c.algorithms = std::move(algos);
	c.delta_grid = std::move(deltas);
	c.n = 10;
	c.budget_T = budget;
	c.sigma = 1.0;
	c.replicates = reps;
	c.groups = 10;
	c.master_seed = seed;
	return c;
}

double error_rate(const std::vector<RunRecord>& recs)
{
	std::size_t fails = 0;
	for (const RunRecord& r : recs)
		fails += !r.success;
	return static_cast<double>(fails) / static_cast<double>(recs.size());
}

void figure2_trend()
{
	const auto t0 = Clock::now();
	const std::vector<double> grid{0.05, 0.1, 0.2, 0.3, 0.5};
	const ExperimentConfig c =
	    s1_config({Algorithm::Asii, Algorithm::Naive}, grid, 10000, 100, 2024);
	std::vector<double> asii_err, naive_err;
	for (double delta : grid) {
		asii_err.push_back(error_rate(run_cell(c, c.scenarios[0], Algorithm::Asii, delta)));
		naive_err.push_back(error_rate(run_cell(c, c.scenarios[0], Algorithm::Naive, delta)));
	}
	const double secs = seconds_since(t0);

	bool monotone = true, beats = true;
	std::ostringstream d;
	d << "delta/asii/naive:";
	for (std::size_t i = 0; i < grid.size(); ++i) {
		d << " " << grid[i] << "/" << asii_err[i] << "/" << naive_err[i];
		if (i > 0 && asii_err[i] > asii_err[i - 1] + 0.05)
			monotone = false;
		if (asii_err[i] > naive_err[i] + 0.05)
			beats = false;
	}
	d << "; non-increasing " << (monotone ? "yes" : "no") << ", asii <= naive+0.05 "
	  << (beats ? "yes" : "no") << ", " << secs << " s (limit 120 s)";
	report("error trend over delta", monotone && beats && secs < 120.0, d.str());
}

void snr_decay()
{
	const std::uint64_t budgets[] = {5000, 10000, 20000, 40000};
	const std::size_t reps = 400;
	std::vector<double> err;
	for (std::uint64_t budget : budgets) {
		ExperimentConfig c = s1_config({Algorithm::Asii}, {0.4}, budget, reps, 31337);
		err.push_back(error_rate(run_cell(c, c.scenarios[0], Algorithm::Asii, 0.4)));
	}
	bool decreasing = true;
	std::ostringstream d;
	d << "T/error:";
	for (std::size_t i = 0; i < err.size(); ++i) {
		d << " " << budgets[i] << "/" << err[i];
		const double cur = std::log(err[i] + 1.0 / reps);
		if (i > 0 && cur > std::log(err[i - 1] + 1.0 / reps))
			decreasing = false;
	}
	const bool halves = err[1] < 0.1 || err[3] <= 0.5 * err[1];
	d << "; log(error+1/400) non-increasing " << (decreasing ? "yes" : "no")
	  << ", error(40k) <= error(10k)/2 when error(10k) >= 0.1 " << (halves ? "yes" : "no");
	report("error decay over T", decreasing && halves, d.str());
}

// Items carry a base label; copies of a label have identical rows, and
// the pair of copies itself has the diagonal value.
struct DuplicateFixture {
	SimilarityMatrix m;
	std::vector<std::size_t> label;
	double delta;
};

DuplicateFixture planted_duplicates(Rng& rng)
{
	const std::size_t base = 3 + rng.below(4);
	const std::size_t copies = 1 + rng.below(8 - base);
	const double delta = rng.below(2) ? 1.0 : 0.5;
	const SimilarityMatrix r = make_scenario(kScenarios[rng.below(4)], base, delta, rng.next());

	std::vector<std::size_t> pool(base);
	for (std::size_t i = 0; i < base; ++i)
		pool[i] = i;
	for (std::size_t c = 0; c < copies; ++c)
		pool.push_back(rng.below(base));

	const std::size_t n = pool.size();
	std::vector<std::size_t> label(n);
	do {
		const Permutation shuffle = random_permutation(n, rng);
		for (std::size_t i = 0; i < n; ++i)
			label[i] = pool[shuffle.rank(i) - 1];
	} while (label[0] == label[1]);

	std::vector<double> a(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			a[i * n + j] = r(label[i], label[j]);
	return {SimilarityMatrix(n, std::move(a)), label, delta};
}

bool kept_order_correct(const RankMap& kept, const std::vector<std::size_t>& label)
{
	const auto order = kept.order();
	bool up = true, down = true;
	for (std::size_t i = 1; i < order.size(); ++i) {
		up = up && label[order[i - 1]] < label[order[i]];
		down = down && label[order[i - 1]] > label[order[i]];
	}
	return up || down;
}

void extension_maximality()
{
	const std::size_t runs = 100;
	std::size_t passed[2] = {0, 0}, ordered[2] = {0, 0};
	const double sigmas[2] = {0.0, 0.01};
	Rng rng(8080);
	for (int mode = 0; mode < 2; ++mode)
		for (std::size_t run = 0; run < runs; ++run) {
			const DuplicateFixture f = planted_duplicates(rng);
			Oracle oracle(f.m, NoiseModel::from_sigma(sigmas[mode]), rng.next());
			const ExtensionResult res = asii_extension(oracle, 1000000, f.delta);
			const std::vector<Item> s = res.kept.items();
			if (verify_delta_maximal(f.m, s, f.delta)) {
				++passed[mode];
				ordered[mode] += kept_order_correct(res.kept, f.label);
			}
		}
	std::ostringstream d;
	d << "noiseless " << passed[0] << "/" << runs << " maximal (" << ordered[0]
	  << " correctly ordered), sigma=0.01 " << passed[1] << "/" << runs << " maximal ("
	  << ordered[1] << " correctly ordered)";
	report("extension maximality",
	       passed[0] == runs && passed[1] >= 95 && ordered[0] == passed[0] &&
	           ordered[1] == passed[1],
	       d.str());
}

std::string strip_ms_column(const std::string& csv)
{
	std::istringstream in(csv);
	std::string line, out;
	while (std::getline(in, line)) {
		std::vector<std::string> fields;
		std::size_t start = 0;
		while (true) {
			const std::size_t comma = line.find(',', start);
			fields.push_back(line.substr(start, comma - start));
			if (comma == std::string::npos)
				break;
			start = comma + 1;
		}
		for (std::size_t i = 0; i < fields.size(); ++i) {
			if (i == 7)
				continue;
			out += fields[i];
			out += i + 1 < fields.size() ? "," : "";
		}
		out += '\n';
	}
	return out;
}

void determinism()
{
	namespace fs = std::filesystem;
	const fs::path dir = fs::temp_directory_path() / "aseriate_acceptance";
	fs::create_directories(dir);
	const fs::path config = dir / "config.json";
	write_text_file(config.string(), R"({
  "scenarios": ["s1", "s4"],
  "algorithms": ["asii", "naive", "spectral", "asii-ext"],
  "delta_grid": [0.2, 0.5],
  "n": 10,
  "budget_T": 10000,
  "sigma": 1.0,
  "replicates": 20,
  "groups": 10,
  "master_seed": 123456789
})");
	std::string outputs[2];
	bool launched = true;
	for (int i = 0; i < 2; ++i) {
		const fs::path out = dir / ("records" + std::to_string(i) + ".csv");
		const std::string cmd = std::string("\"") + ASERIATE_CLI + "\" run --config \"" +
		                        config.string() + "\" --threads " + (i == 0 ? "1" : "4") +
		                        " --out \"" + out.string() + "\"";
		launched = launched && std::system(cmd.c_str()) == 0;
		if (launched)
			outputs[i] = read_text_file(out.string());
	}
	const bool same = launched && !outputs[0].empty() &&
	                  strip_ms_column(outputs[0]) == strip_ms_column(outputs[1]);
	std::ostringstream d;
	d << "two runs (1 and 4 threads) " << (same ? "identical" : "differ")
	  << " apart from the ms column";
	report("determinism", same, d.str());
}

} // namespace

int main()
{
	const std::pair<const char*, std::function<void()>> criteria[] = {
	    {"noiseless exactness", noiseless_exactness},
	    {"brute-force equivalence", brute_force_equivalence},
	    {"budget invariant", budget_invariant},
	    {"BBS potential bounds", bbs_bounds},
	    {"error trend over delta", figure2_trend},
	    {"error decay over T", snr_decay},
	    {"extension maximality", extension_maximality},
	    {"determinism", determinism},
	};
	for (const auto& [name, fn] : criteria) {
		try {
			fn();
		} catch (const std::exception& e) {
			report(name, false, std::string("threw: ") + e.what());
		}
	}
	std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
	          << std::endl;
	return failures == 0 ? 0 : 1;
}
