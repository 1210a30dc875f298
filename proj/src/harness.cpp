#include <aseriation/harness.hpp>

#include <aseriation/errors.hpp>
#include <aseriation/oracle.hpp>
#include <aseriation/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace aseriation {

std::string_view to_string(Algorithm a)
{
	switch (a) {
	case Algorithm::Asii: return "asii";
	case Algorithm::AsiiExt: return "asii-ext";
	case Algorithm::Naive: return "naive";
	case Algorithm::AdaptiveSorting: return "adaptive-sorting";
	case Algorithm::Spectral: return "spectral";
	}
	return "?";
}

Algorithm parse_algorithm(std::string_view text)
{
	for (Algorithm a : {Algorithm::Asii, Algorithm::AsiiExt, Algorithm::Naive,
	                    Algorithm::AdaptiveSorting, Algorithm::Spectral})
		if (text == to_string(a))
			return a;
	throw FormatError("unknown algorithm '" + std::string(text) + "'");
}

bool is_batch(Algorithm a)
{
	return a == Algorithm::AdaptiveSorting || a == Algorithm::Spectral;
}

void ExperimentConfig::validate() const
{
	if (scenarios.empty())
		throw FormatError("config: no scenarios");
	if (algorithms.empty())
		throw FormatError("config: no algorithms");
	if (delta_grid.empty())
		throw FormatError("config: empty delta grid");
	for (std::size_t i = 0; i < delta_grid.size(); ++i) {
		if (!(delta_grid[i] > 0.0) || !std::isfinite(delta_grid[i]))
			throw FormatError("config: delta grid values must be positive");
		if (i > 0 && !(delta_grid[i] > delta_grid[i - 1]))
			throw FormatError("config: delta grid must be strictly increasing");
	}
	if (n < 3)
		throw FormatError("config: n must be at least 3");
	if (!(sigma >= 0.0) || !std::isfinite(sigma))
		throw FormatError("config: sigma must be non-negative");
	if (replicates == 0 || groups == 0 || replicates % groups != 0)
		throw FormatError("config: replicates must be a positive multiple of groups");
	if (delta_tilde && !(*delta_tilde > 0.0))
		throw FormatError("config: delta_tilde must be positive");
	for (const ScenarioSpec& s : scenarios)
		if (s.id == ScenarioId::File && !s.path)
			throw FormatError("config: file scenario needs a path");
}

ExperimentConfig parse_config_json(std::string_view text)
{
	using nlohmann::json;
	ExperimentConfig c;
	try {
		const json j = json::parse(text);
		if (!j.is_object())
			throw FormatError("config: expected a JSON object");
		std::optional<std::string> path;
		for (const auto& [key, value] : j.items()) {
			if (key == "scenarios") {
				for (const auto& s : value) {
					ScenarioSpec spec;
					spec.id = parse_scenario(s.get<std::string>());
					c.scenarios.push_back(spec);
				}
			} else if (key == "algorithms") {
				for (const auto& a : value)
					c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
			} else if (key == "delta_grid") {
				c.delta_grid = value.get<std::vector<double>>();
			} else if (key == "n") {
				c.n = value.get<std::size_t>();
			} else if (key == "budget_T") {
				c.budget_T = value.get<std::uint64_t>();
			} else if (key == "sigma") {
				c.sigma = value.get<double>();
			} else if (key == "replicates") {
				c.replicates = value.get<std::size_t>();
			} else if (key == "groups") {
				c.groups = value.get<std::size_t>();
			} else if (key == "master_seed") {
				c.master_seed = value.get<std::uint64_t>();
			} else if (key == "delta_tilde") {
				c.delta_tilde = value.get<double>();
			} else if (key == "threads") {
				c.threads = value.get<std::size_t>();
			} else if (key == "path") {
				path = value.get<std::string>();
			} else {
				throw FormatError("config: unknown key '" + key + "'");
			}
		}
		for (ScenarioSpec& s : c.scenarios)
			if (s.id == ScenarioId::File)
				s.path = path;
	} catch (const json::exception& e) {
		throw FormatError(std::string("config: ") + e.what());
	}
	c.validate();
	return c;
}

ExperimentConfig load_config(const std::string& path)
{
	return parse_config_json(read_text_file(path));
}

std::uint64_t replicate_seed(std::uint64_t master_seed, ScenarioId scenario, Algorithm algorithm,
                             double delta, std::size_t rep)
{
	std::uint64_t h = hash_combine(master_seed, static_cast<std::uint64_t>(scenario));
	h = hash_combine(h, static_cast<std::uint64_t>(algorithm));
	h = hash_combine(h, std::bit_cast<std::uint64_t>(delta));
	return hash_combine(h, rep);
}

// ---------------------------------------------------------------------------

namespace {

struct AlgorithmOutcome {
	RankMap ordering;
	std::vector<Discard> discarded;
	bool budget_clamped = false;
};

AlgorithmOutcome run_algorithm(Algorithm algo, Oracle& oracle, std::uint64_t budget_T,
                               std::optional<double> delta_tilde)
{
	AlgorithmOutcome out;
	switch (algo) {
	case Algorithm::Asii: {
		InsertionResult r = asii(oracle, budget_T);
		out.ordering = RankMap(r.ordering.order());
		out.budget_clamped = r.budget_clamped;
		break;
	}
	case Algorithm::Naive: {
		InsertionResult r = naive_insertion(oracle, budget_T);
		out.ordering = RankMap(r.ordering.order());
		out.budget_clamped = r.budget_clamped;
		break;
	}
	case Algorithm::AsiiExt: {
		if (!delta_tilde)
			throw std::invalid_argument("asii-ext needs a resolution delta_tilde");
		ExtensionResult r = asii_extension(oracle, budget_T, *delta_tilde);
		out.ordering = std::move(r.kept);
		out.discarded = std::move(r.discarded);
		out.budget_clamped = r.budget_clamped;
		break;
	}
	case Algorithm::AdaptiveSorting:
		out.ordering = RankMap(adaptive_sorting(batch_observe(oracle, budget_T)).order());
		break;
	case Algorithm::Spectral:
		out.ordering = RankMap(spectral_seriation(batch_observe(oracle, budget_T)).order());
		break;
	}
	return out;
}

RunRecord run_replicate(const ExperimentConfig& config, const ScenarioSpec& scenario,
                        const std::shared_ptr<const SimilarityMatrix>& file_matrix,
                        Algorithm algo, double delta, std::size_t rep)
{
	RunRecord rec;
	rec.scenario = scenario.id;
	rec.algorithm = algo;
	rec.delta = delta;
	rec.rep = rep;
	rec.seed = replicate_seed(config.master_seed, scenario.id, algo, delta, rep);

	SimilarityMatrix r;
	if (file_matrix) {
		r = *file_matrix;
	} else {
		ScenarioSpec spec = scenario;
		spec.n = config.n;
		spec.delta = delta;
		spec.seed = hash_combine(rec.seed, 2);
		r = generate(spec);
	}
	const std::size_t n = r.size();
	Rng perm_rng(hash_combine(rec.seed, 1));
	const Permutation truth = random_permutation(n, perm_rng);
	Oracle oracle(apply_permutation(r, truth), NoiseModel::from_sigma(config.sigma),
	              hash_combine(rec.seed, 3));

	const auto start = std::chrono::steady_clock::now();
	try {
		const AlgorithmOutcome out =
		    run_algorithm(algo, oracle, config.budget_T, config.delta_tilde.value_or(delta));
		rec.budget_clamped = out.budget_clamped;
		if (algo == Algorithm::AsiiExt) {
			rec.kept = out.ordering.size();
			rec.discarded = out.discarded.size();
		}
		rec.success = out.ordering.size() == n &&
		              is_recovery_success(Permutation::from_order(out.ordering.order()), truth);
	} catch (const std::exception& e) {
		rec.success = false;
		rec.error = e.what();
	}
	rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
	             .count();
	rec.queries = oracle.ledger().total();

	if (rec.error.empty()) {
		if (algo == Algorithm::Asii && !rec.budget_clamped && rec.queries > config.budget_T)
			throw std::logic_error("asii spent " + std::to_string(rec.queries) +
			                       " samples with budget " + std::to_string(config.budget_T));
		if (is_batch(algo)) {
			const std::uint64_t expected = n * (n - 1) / 2 * (config.budget_T / (n * n));
			if (rec.queries != expected)
				throw std::logic_error("batch run spent " + std::to_string(rec.queries) +
				                       " samples, expected " + std::to_string(expected));
		}
	}
	return rec;
}

} // namespace

std::vector<RunRecord> run_cell(const ExperimentConfig& config, const ScenarioSpec& scenario,
                                Algorithm algorithm, double delta)
{
	std::shared_ptr<const SimilarityMatrix> file_matrix;
	if (scenario.id == ScenarioId::File)
		file_matrix = std::make_shared<const SimilarityMatrix>(generate(scenario));

	std::vector<RunRecord> records(config.replicates);
	std::atomic<std::size_t> next{0};
	std::mutex fail_mu;
	std::exception_ptr failure;

	auto worker = [&] {
		for (std::size_t rep; (rep = next.fetch_add(1)) < records.size();) {
			try {
				records[rep] = run_replicate(config, scenario, file_matrix, algorithm, delta, rep);
			} catch (...) {
				std::lock_guard lock(fail_mu);
				if (!failure)
					failure = std::current_exception();
			}
		}
	};

	std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
	threads = std::clamp<std::size_t>(threads, 1, records.size());
	{
		std::vector<std::jthread> pool;
		for (std::size_t t = 1; t < threads; ++t)
			pool.emplace_back(worker);
		worker();
	}
	if (failure)
		std::rethrow_exception(failure);
	return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config)
{
	config.validate();
	std::vector<RunRecord> all;
	for (const ScenarioSpec& s : config.scenarios)
		for (Algorithm a : config.algorithms)
			for (double delta : config.delta_grid) {
				std::vector<RunRecord> cell = run_cell(config, s, a, delta);
				all.insert(all.end(), cell.begin(), cell.end());
			}
	return all;
}

// ---------------------------------------------------------------------------

double nearest_rank_quantile(const std::vector<double>& sorted, double p)
{
	if (sorted.empty())
		throw std::invalid_argument("nearest_rank_quantile: no values");
	const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
	return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

std::vector<CurvePoint> summarize(const std::vector<RunRecord>& records, std::size_t groups)
{
	if (records.empty())
		throw std::invalid_argument("summarize: no records");
	if (groups == 0)
		throw std::invalid_argument("summarize: groups must be positive");

	using Key = std::tuple<ScenarioId, Algorithm, double>;
	std::vector<Key> keys;
	std::map<Key, std::vector<const RunRecord*>> cells;
	for (const RunRecord& r : records) {
		const Key key{r.scenario, r.algorithm, r.delta};
		auto [it, fresh] = cells.try_emplace(key);
		if (fresh)
			keys.push_back(key);
		it->second.push_back(&r);
	}

	std::vector<CurvePoint> out;
	for (const Key& key : keys) {
		std::vector<const RunRecord*>& cell = cells[key];
		std::stable_sort(cell.begin(), cell.end(),
		                 [](const RunRecord* a, const RunRecord* b) { return a->rep < b->rep; });
		const std::size_t total = cell.size();
		if (total % groups != 0)
			throw std::invalid_argument("summarize: " + std::to_string(total) +
			                            " records do not split into " + std::to_string(groups) +
			                            " groups");
		const std::size_t per_group = total / groups;

		CurvePoint pt;
		std::tie(pt.scenario, pt.algorithm, pt.delta) = key;
		pt.n_reps = total;
		std::size_t failures = 0;
		for (std::size_t g = 0; g < groups; ++g) {
			std::size_t group_failures = 0;
			for (std::size_t i = g * per_group; i < (g + 1) * per_group; ++i)
				group_failures += cell[i]->success ? 0 : 1;
			failures += group_failures;
			pt.group_errors.push_back(static_cast<double>(group_failures) /
			                          static_cast<double>(per_group));
		}
		pt.mean_error = static_cast<double>(failures) / static_cast<double>(total);
		std::vector<double> sorted = pt.group_errors;
		std::sort(sorted.begin(), sorted.end());
		pt.q10 = nearest_rank_quantile(sorted, 0.1);
		pt.q90 = nearest_rank_quantile(sorted, 0.9);
		out.push_back(std::move(pt));
	}
	return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
	std::vector<std::string_view> fields;
	while (true) {
		const std::size_t comma = line.find(',');
		fields.push_back(line.substr(0, comma));
		if (comma == std::string_view::npos)
			return fields;
		line.remove_prefix(comma + 1);
	}
}

std::vector<std::string_view> split_lines(std::string_view text)
{
	std::vector<std::string_view> lines;
	while (!text.empty()) {
		const std::size_t nl = text.find('\n');
		std::string_view line = text.substr(0, nl);
		if (!line.empty() && line.back() == '\r')
			line.remove_suffix(1);
		if (!line.empty())
			lines.push_back(line);
		text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
	}
	return lines;
}

template <class T>
T parse_number(std::string_view field, std::string_view what)
{
	T v{};
	const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
	if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
		throw FormatError("bad " + std::string(what) + " field '" + std::string(field) + "'");
	return v;
}

std::string format_ms(double ms)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3f", ms);
	return buf;
}

constexpr std::string_view kRecordsHeader = "scenario,algo,delta,rep,seed,success,queries,ms";
constexpr std::string_view kCurvesHeader = "scenario,algo,delta,mean_error,q10,q90,n_reps";

} // namespace

std::string format_records_csv(const std::vector<RunRecord>& records)
{
	const bool ext = std::any_of(records.begin(), records.end(),
	                             [](const RunRecord& r) { return r.kept.has_value(); });
	std::string out(kRecordsHeader);
	if (ext)
		out += ",kept,discarded";
	out += '\n';
	for (const RunRecord& r : records) {
		out += to_string(r.scenario);
		out += ',';
		out += to_string(r.algorithm);
		out += ',' + format_double(r.delta) + ',' + std::to_string(r.rep) + ',' +
		       std::to_string(r.seed) + ',' + (r.success ? "1" : "0") + ',' +
		       std::to_string(r.queries) + ',' + format_ms(r.ms);
		if (ext) {
			out += ',';
			if (r.kept)
				out += std::to_string(*r.kept);
			out += ',';
			if (r.discarded)
				out += std::to_string(*r.discarded);
		}
		out += '\n';
	}
	return out;
}

std::vector<RunRecord> parse_records_csv(std::string_view text)
{
	const std::vector<std::string_view> lines = split_lines(text);
	if (lines.empty() || !lines[0].starts_with(kRecordsHeader))
		throw FormatError("records CSV: missing header");
	const bool ext = lines[0] == std::string(kRecordsHeader) + ",kept,discarded";
	if (!ext && lines[0] != kRecordsHeader)
		throw FormatError("records CSV: unexpected header");
	const std::size_t width = ext ? 10 : 8;

	std::vector<RunRecord> out;
	for (std::size_t i = 1; i < lines.size(); ++i) {
		const auto f = split_fields(lines[i]);
		if (f.size() != width)
			throw FormatError("records CSV: line " + std::to_string(i + 1) + " has " +
			                  std::to_string(f.size()) + " fields");
		RunRecord r;
		r.scenario = parse_scenario(f[0]);
		r.algorithm = parse_algorithm(f[1]);
		r.delta = parse_number<double>(f[2], "delta");
		r.rep = parse_number<std::size_t>(f[3], "rep");
		r.seed = parse_number<std::uint64_t>(f[4], "seed");
		if (f[5] != "0" && f[5] != "1")
			throw FormatError("records CSV: success must be 0 or 1");
		r.success = f[5] == "1";
		r.queries = parse_number<std::uint64_t>(f[6], "queries");
		r.ms = parse_number<double>(f[7], "ms");
		if (ext && !f[8].empty())
			r.kept = parse_number<std::size_t>(f[8], "kept");
		if (ext && !f[9].empty())
			r.discarded = parse_number<std::size_t>(f[9], "discarded");
		out.push_back(std::move(r));
	}
	return out;
}

std::string format_curves_csv(const std::vector<CurvePoint>& curves)
{
	std::string out(kCurvesHeader);
	out += '\n';
	for (const CurvePoint& c : curves) {
		out += to_string(c.scenario);
		out += ',';
		out += to_string(c.algorithm);
		out += ',' + format_double(c.delta) + ',' + format_double(c.mean_error) + ',' +
		       format_double(c.q10) + ',' + format_double(c.q90) + ',' + std::to_string(c.n_reps) +
		       '\n';
	}
	return out;
}

std::vector<CurvePoint> parse_curves_csv(std::string_view text)
{
	const std::vector<std::string_view> lines = split_lines(text);
	if (lines.empty() || lines[0] != kCurvesHeader)
		throw FormatError("curves CSV: missing or unexpected header");
	std::vector<CurvePoint> out;
	for (std::size_t i = 1; i < lines.size(); ++i) {
		const auto f = split_fields(lines[i]);
		if (f.size() != 7)
			throw FormatError("curves CSV: line " + std::to_string(i + 1) + " has " +
			                  std::to_string(f.size()) + " fields");
		CurvePoint c;
		c.scenario = parse_scenario(f[0]);
		c.algorithm = parse_algorithm(f[1]);
		c.delta = parse_number<double>(f[2], "delta");
		c.mean_error = parse_number<double>(f[3], "mean_error");
		c.q10 = parse_number<double>(f[4], "q10");
		c.q90 = parse_number<double>(f[5], "q90");
		c.n_reps = parse_number<std::size_t>(f[6], "n_reps");
		out.push_back(std::move(c));
	}
	return out;
}

std::string read_text_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw FormatError("cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw FormatError("cannot write '" + path + "'");
	out << text;
	if (!out)
		throw FormatError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------

SeriationOutput seriate_file(const SeriationRequest& req)
{
	SeriationOutput out;
	auto m = std::make_shared<const SimilarityMatrix>(load_matrix_csv(req.path, &out.load_info));
	if (m->size() < 3)
		throw DimensionError("seriate: need at least three items");
	Oracle oracle(m, NoiseModel::from_sigma(req.sigma), req.seed);
	AlgorithmOutcome res = run_algorithm(req.algorithm, oracle, req.budget_T, req.delta_tilde);
	out.reordered = m->submatrix(res.ordering.order());
	out.ordering = std::move(res.ordering);
	out.discarded = std::move(res.discarded);
	out.queries = oracle.ledger().total();
	return out;
}

std::string format_ordering_csv(const RankMap& ordering)
{
	std::string out = "item,rank\n";
	const auto order = ordering.order();
	for (std::size_t r = 0; r < order.size(); ++r)
		out += std::to_string(order[r] + 1) + ',' + std::to_string(r + 1) + '\n';
	return out;
}

std::string format_discards_csv(const std::vector<Discard>& discarded)
{
	std::string out = "item,reason\n";
	for (const Discard& d : discarded)
		out += std::to_string(d.item + 1) + ',' + to_string(d.reason) + '\n';
	return out;
}

} // namespace aseriation
