/// @file  harness.hpp
/// @brief Monte Carlo experiment runner: grids of (scenario, algorithm, delta)
/// cells, replicate records, error curves and their CSV forms.
///
/// Replicate r of a cell draws everything from
///
///   seed_r = hc(hc(hc(hc(hc(master, scenario), algorithm), bits(delta)), r))
///
/// with hc = hash_combine and scenario/algorithm their enum values, so a
/// cell can be re-run alone with identical results. Three sub-streams are
/// split off seed_r: hc(seed_r, 1) for the latent permutation, hc(seed_r, 2)
/// for random matrix entries (s4) and hc(seed_r, 3) for the oracle noise.

#pragma once

#include <aseriation/baselines.hpp>
#include <aseriation/core.hpp>
#include <aseriation/extension.hpp>
#include <aseriation/scenarios.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aseriation {

enum class Algorithm { Asii, AsiiExt, Naive, AdaptiveSorting, Spectral };

std::string_view to_string(Algorithm a);
/// Accepts asii, asii-ext, naive, adaptive-sorting and spectral.
Algorithm parse_algorithm(std::string_view text);

bool is_batch(Algorithm a);

struct ExperimentConfig {
	/// n and delta of each entry are overridden per cell.
	std::vector<ScenarioSpec> scenarios;
	std::vector<Algorithm> algorithms;
	std::vector<double> delta_grid;
	std::size_t n = 10;
	std::uint64_t budget_T = 10000;
	double sigma = 1.0;
	std::size_t replicates = 100;
	std::size_t groups = 10;
	std::uint64_t master_seed = 0;
	/// Resolution for asii-ext; the cell's delta when unset.
	std::optional<double> delta_tilde;
	/// Worker threads; 0 picks the hardware concurrency.
	std::size_t threads = 0;

	/// Throws FormatError on an empty grid, replicates not divisible by
	/// groups, a non-increasing or non-positive delta grid, negative sigma,
	/// n < 3, or a file scenario without a path.
	void validate() const;
};

/// Flat JSON object with keys scenarios (list of ids), algorithms,
/// delta_grid, n, budget_T, sigma, replicates, groups, master_seed and
/// optionally delta_tilde, threads and path (for the file scenario).
/// Unknown keys are rejected. The result is validated.
ExperimentConfig parse_config_json(std::string_view text);
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
	ScenarioId scenario = ScenarioId::S1;
	Algorithm algorithm = Algorithm::Asii;
	double delta = 0.0;
	std::size_t rep = 0;
	std::uint64_t seed = 0;
	bool success = false;
	std::uint64_t queries = 0;
	double ms = 0.0;
	/// asii-ext only.
	std::optional<std::size_t> kept;
	std::optional<std::size_t> discarded;
	/// Some per-test budget was raised to the 3-sample minimum.
	bool budget_clamped = false;
	/// Set when the algorithm threw; the run counts as a failure.
	std::string error;
};

std::uint64_t replicate_seed(std::uint64_t master_seed, ScenarioId scenario, Algorithm algorithm,
                             double delta, std::size_t rep);

/// Runs every replicate of one cell, in parallel, sorted by rep. Algorithm
/// errors become failed records. Throws std::logic_error if an asii run that
/// was not clamped exceeds budget_T, or a batch run does not spend exactly
/// pairs * floor(T / n^2).
std::vector<RunRecord> run_cell(const ExperimentConfig& config, const ScenarioSpec& scenario,
                                Algorithm algorithm, double delta);

/// All cells in scenario, algorithm, delta order.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

struct CurvePoint {
	ScenarioId scenario = ScenarioId::S1;
	Algorithm algorithm = Algorithm::Asii;
	double delta = 0.0;
	double mean_error = 0.0;
	double q10 = 0.0;
	double q90 = 0.0;
	std::size_t n_reps = 0;
	/// Error rate of each block of consecutive replicates.
	std::vector<double> group_errors;
};

/// Nearest-rank quantile of sorted values: element ceil(p * size), 1-based,
/// at least the first.
double nearest_rank_quantile(const std::vector<double>& sorted, double p);

/// One point per (scenario, algorithm, delta) in order of first appearance.
/// Within a point the records are split by rep into `groups` equal blocks.
/// Throws std::invalid_argument on no records or a record count not
/// divisible by groups.
std::vector<CurvePoint> summarize(const std::vector<RunRecord>& records, std::size_t groups);

/// scenario,algo,delta,rep,seed,success,queries,ms and, if any record has
/// them, kept,discarded.
std::string format_records_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_records_csv(std::string_view text);
/// scenario,algo,delta,mean_error,q10,q90,n_reps
std::string format_curves_csv(const std::vector<CurvePoint>& curves);
std::vector<CurvePoint> parse_curves_csv(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

struct SeriationRequest {
	std::string path;
	Algorithm algorithm = Algorithm::Asii;
	std::uint64_t budget_T = 100000;
	double sigma = 0.0;
	std::uint64_t seed = 0;
	/// Required by asii-ext.
	std::optional<double> delta_tilde;
};

struct SeriationOutput {
	/// Items by recovered rank; every item unless asii-ext discarded some.
	RankMap ordering;
	std::vector<Discard> discarded;
	/// The input matrix restricted to and reordered by `ordering`.
	SimilarityMatrix reordered;
	std::uint64_t queries = 0;
	CsvLoadInfo load_info;
};

/// Treats the file matrix as the hidden matrix of an oracle and runs one
/// algorithm on it.
SeriationOutput seriate_file(const SeriationRequest& request);

/// item,rank with 1-based items.
std::string format_ordering_csv(const RankMap& ordering);
/// item,reason with 1-based items.
std::string format_discards_csv(const std::vector<Discard>& discarded);

} // namespace aseriation
