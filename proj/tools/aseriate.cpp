// aseriate: command-line front end for scenario generation, Monte Carlo
// sweeps, one-shot seriation of a matrix file and curve summaries.

#include <aseriation/harness.hpp>
#include <aseriation/rng.hpp>
#include <aseriation/scenarios.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace aseriation;

namespace {

struct GenArgs {
	std::string scenario = "s1";
	std::size_t n = 10;
	double delta = 1.0;
	std::uint64_t seed = 0;
	bool shuffle = false;
	std::string out;
	std::string truth_out;
};

struct RunArgs {
	std::string config;
	std::vector<std::string> scenarios{"s1"};
	std::vector<std::string> algorithms{"asii"};
	std::size_t n = 10;
	std::uint64_t budget_T = 10000;
	double sigma = 1.0;
	std::vector<double> delta_grid{0.05, 0.1, 0.2, 0.3, 0.5};
	std::size_t reps = 100;
	std::size_t groups = 10;
	std::uint64_t seed = 0;
	std::optional<double> delta_tilde;
	std::string path;
	std::size_t threads = 0;
	std::string out = "records.csv";
	std::string curves;
};

struct SeriateArgs {
	std::string in;
	std::string algorithm = "asii";
	std::uint64_t budget_T = 100000;
	double sigma = 0.0;
	std::uint64_t seed = 0;
	std::optional<double> delta_tilde;
	std::string order_out = "ordering.csv";
	std::string matrix_out;
	std::string discard_out;
};

struct SummarizeArgs {
	std::string in;
	std::size_t groups = 10;
	std::string out = "curves.csv";
};

int do_gen(const GenArgs& a)
{
	ScenarioSpec spec;
	spec.id = parse_scenario(a.scenario);
	if (spec.id == ScenarioId::File)
		throw FormatError("gen: choose one of s1, s2, s3, s4");
	spec.n = a.n;
	spec.delta = a.delta;
	spec.seed = a.seed;
	SimilarityMatrix m = generate(spec);
	Permutation truth = Permutation::identity(a.n);
	if (a.shuffle) {
		Rng rng(hash_combine(a.seed, 1));
		truth = random_permutation(a.n, rng);
		m = apply_permutation(m, truth);
	}
	save_matrix_csv(m, a.out);
	if (!a.truth_out.empty()) {
		std::string csv = "item,rank\n";
		for (Item i = 0; i < truth.size(); ++i)
			csv += std::to_string(i + 1) + ',' + std::to_string(truth.rank(i)) + '\n';
		write_text_file(a.truth_out, csv);
	}
	return 0;
}

int do_run(const RunArgs& a)
{
	ExperimentConfig c;
	if (!a.config.empty()) {
		c = load_config(a.config);
	} else {
		for (const auto& s : a.scenarios) {
			ScenarioSpec spec;
			spec.id = parse_scenario(s);
			if (spec.id == ScenarioId::File && !a.path.empty())
				spec.path = a.path;
			c.scenarios.push_back(spec);
		}
		for (const auto& al : a.algorithms)
			c.algorithms.push_back(parse_algorithm(al));
		c.n = a.n;
		c.budget_T = a.budget_T;
		c.sigma = a.sigma;
		c.delta_grid = a.delta_grid;
		c.replicates = a.reps;
		c.groups = a.groups;
		c.master_seed = a.seed;
		c.delta_tilde = a.delta_tilde;
		c.validate();
	}
	if (a.threads)
		c.threads = a.threads;

	const std::vector<RunRecord> records = run_experiment(c);
	std::size_t errors = 0;
	for (const RunRecord& r : records)
		if (!r.error.empty() && errors++ < 5)
			std::cerr << "warning: " << to_string(r.scenario) << '/' << to_string(r.algorithm)
			          << " delta=" << r.delta << " rep=" << r.rep << ": " << r.error << '\n';
	if (errors)
		std::cerr << "warning: " << errors << " runs raised errors and count as failures\n";

	write_text_file(a.out, format_records_csv(records));
	if (!a.curves.empty())
		write_text_file(a.curves, format_curves_csv(summarize(records, c.groups)));
	return 0;
}

int do_seriate(const SeriateArgs& a)
{
	SeriationRequest req;
	req.path = a.in;
	req.algorithm = parse_algorithm(a.algorithm);
	req.budget_T = a.budget_T;
	req.sigma = a.sigma;
	req.seed = a.seed;
	req.delta_tilde = a.delta_tilde;
	const SeriationOutput out = seriate_file(req);
	if (out.load_info.max_asymmetry > kSymmetryTolerance)
		std::cerr << "warning: input is asymmetric (max skew " << out.load_info.max_asymmetry
		          << "); symmetrized by averaging\n";

	write_text_file(a.order_out, format_ordering_csv(out.ordering));
	if (!a.matrix_out.empty())
		save_matrix_csv(out.reordered, a.matrix_out);
	if (!a.discard_out.empty())
		write_text_file(a.discard_out, format_discards_csv(out.discarded));
	std::cout << "items kept: " << out.ordering.size() << ", discarded: " << out.discarded.size()
	          << ", samples: " << out.queries << '\n';
	return 0;
}

int do_summarize(const SummarizeArgs& a)
{
	const auto records = parse_records_csv(read_text_file(a.in));
	write_text_file(a.out, format_curves_csv(summarize(records, a.groups)));
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Active seriation from noisy pairwise similarity queries"};
	app.require_subcommand(1);

	GenArgs gen;
	auto* g = app.add_subcommand("gen", "Write a synthetic Robinson matrix as CSV");
	g->add_option("--scenario", gen.scenario, "s1, s2, s3 or s4")->capture_default_str();
	g->add_option("--n", gen.n, "Number of items")->capture_default_str();
	g->add_option("--delta", gen.delta, "Gap parameter")->capture_default_str();
	g->add_option("--seed", gen.seed, "Seed for random entries and shuffling")->capture_default_str();
	g->add_flag("--shuffle", gen.shuffle, "Permute items by a random latent ordering");
	g->add_option("--out", gen.out, "Matrix CSV")->required();
	g->add_option("--truth-out", gen.truth_out, "Write the latent ordering (item,rank)");

	RunArgs run;
	auto* r = app.add_subcommand("run", "Monte Carlo sweep over scenarios, algorithms and deltas");
	auto* cfg = r->add_option("--config", run.config, "Flat JSON experiment config");
	r->add_option("--scenario", run.scenarios, "Scenario ids")
	    ->delimiter(',')
	    ->excludes(cfg)
	    ->capture_default_str();
	r->add_option("--algo", run.algorithms, "asii, asii-ext, naive, adaptive-sorting, spectral")
	    ->delimiter(',')
	    ->excludes(cfg)
	    ->capture_default_str();
	r->add_option("--n", run.n, "Number of items")->excludes(cfg)->capture_default_str();
	r->add_option("--t", run.budget_T, "Sample budget T")->excludes(cfg)->capture_default_str();
	r->add_option("--sigma", run.sigma, "Noise standard deviation")->excludes(cfg)->capture_default_str();
	r->add_option("--delta-grid", run.delta_grid, "Increasing gap values")
	    ->delimiter(',')
	    ->excludes(cfg)
	    ->capture_default_str();
	r->add_option("--reps", run.reps, "Replicates per cell")->excludes(cfg)->capture_default_str();
	r->add_option("--groups", run.groups, "Groups for quantile bands")->excludes(cfg)->capture_default_str();
	r->add_option("--seed", run.seed, "Master seed")->excludes(cfg)->capture_default_str();
	r->add_option("--delta-tilde", run.delta_tilde, "asii-ext resolution (default: the cell's delta)")
	    ->excludes(cfg);
	r->add_option("--path", run.path, "Matrix CSV for the file scenario")->excludes(cfg);
	r->add_option("--threads", run.threads, "Worker threads (0 = all cores)")->capture_default_str();
	r->add_option("--out", run.out, "Records CSV")->capture_default_str();
	r->add_option("--curves", run.curves, "Also write the curves CSV");

	SeriateArgs ser;
	auto* s = app.add_subcommand("seriate", "Recover an ordering of a matrix file");
	s->add_option("--in", ser.in, "Matrix CSV")->required();
	s->add_option("--algo", ser.algorithm, "Algorithm")->capture_default_str();
	s->add_option("--t", ser.budget_T, "Sample budget T")->capture_default_str();
	s->add_option("--sigma", ser.sigma, "Noise added to each sample")->capture_default_str();
	s->add_option("--seed", ser.seed, "Noise seed")->capture_default_str();
	s->add_option("--delta-tilde", ser.delta_tilde, "Resolution for asii-ext");
	s->add_option("--order-out", ser.order_out, "Ordering CSV (item,rank)")->capture_default_str();
	s->add_option("--matrix-out", ser.matrix_out, "Reordered matrix CSV");
	s->add_option("--discard-out", ser.discard_out, "Discarded items CSV (item,reason)");

	SummarizeArgs sum;
	auto* m = app.add_subcommand("summarize", "Turn a records CSV into error curves");
	m->add_option("--in", sum.in, "Records CSV")->required();
	m->add_option("--groups", sum.groups, "Groups for quantile bands")->capture_default_str();
	m->add_option("--out", sum.out, "Curves CSV")->capture_default_str();

	CLI11_PARSE(app, argc, argv);

	try {
		if (g->parsed())
			return do_gen(gen);
		if (r->parsed())
			return do_run(run);
		if (s->parsed())
			return do_seriate(ser);
		if (m->parsed())
			return do_summarize(sum);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
