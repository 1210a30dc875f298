#include <aseriation/scenarios.hpp>

#include <aseriation/errors.hpp>
#include <aseriation/rng.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace aseriation {

std::string_view to_string(ScenarioId id)
{
	switch (id) {
	case ScenarioId::S1: return "s1";
	case ScenarioId::S2: return "s2";
	case ScenarioId::S3: return "s3";
	case ScenarioId::S4: return "s4";
	case ScenarioId::File: return "file";
	}
	return "?";
}

ScenarioId parse_scenario(std::string_view text)
{
	for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3, ScenarioId::S4,
	                      ScenarioId::File})
		if (text == to_string(id))
			return id;
	throw FormatError("unknown scenario '" + std::string(text) + "'");
}

namespace {

// Fills the strict lower triangle from f(i, j) with 1-based i > j, mirrors
// it, and sets the diagonal to the largest entry plus delta.
template <class F>
std::vector<double> lower_formula(std::size_t n, double delta, F f)
{
	std::vector<double> a(n * n, 0.0);
	double top = -std::numeric_limits<double>::infinity();
	for (std::size_t i = 2; i <= n; ++i)
		for (std::size_t j = 1; j < i; ++j) {
			const double v = f(static_cast<double>(i), static_cast<double>(j));
			a[(i - 1) * n + (j - 1)] = a[(j - 1) * n + (i - 1)] = v;
			top = std::max(top, v);
		}
	for (std::size_t i = 0; i < n; ++i)
		a[i * n + i] = top + delta;
	return a;
}

std::vector<double> scenario4(std::size_t n, double delta, std::uint64_t seed)
{
	Rng rng(seed);
	std::vector<double> a(n * n, 0.0);
	auto at = [&](std::size_t i, std::size_t j) -> double& { return a[(i - 1) * n + (j - 1)]; };
	for (std::size_t i = 1; i <= n; ++i)
		at(i, i) = rng.uniform(1.0, 10.0);
	for (std::size_t d = 1; d < n; ++d)
		for (std::size_t j = 1; j + d <= n; ++j) {
			const std::size_t i = j + d;
			at(i, j) = std::min(at(i - 1, j), at(i, j + 1)) - rng.uniform(delta, 10.0 * delta);
			at(j, i) = at(i, j);
		}
	return a;
}

} // namespace

SimilarityMatrix generate(const ScenarioSpec& spec)
{
	if (spec.id == ScenarioId::File) {
		if (!spec.path)
			throw std::invalid_argument("generate: file scenario needs a path");
		return load_matrix_csv(*spec.path);
	}
	const std::size_t n = spec.n;
	const double delta = spec.delta;
	if (n < 2)
		throw std::invalid_argument("generate: n must be at least 2");
	if (!(delta > 0.0) || !std::isfinite(delta))
		throw std::invalid_argument("generate: delta must be positive");

	const double dn = static_cast<double>(n);
	std::vector<double> a;
	switch (spec.id) {
	case ScenarioId::S1:
		a.resize(n * n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) {
				const double d = static_cast<double>(i > j ? i - j : j - i);
				a[i * n + j] = delta * (dn - d);
			}
		break;
	case ScenarioId::S2:
		a = lower_formula(n, delta, [&](double i, double j) {
			return delta * (dn - (i - j)) * std::pow(std::max(j, dn - i), 1.5);
		});
		break;
	case ScenarioId::S3:
		a = lower_formula(n, delta, [&](double i, double j) {
			const double base = delta * (dn - (i - j)) * std::max(j, dn - i);
			return (i - j) <= dn / 4.0 ? 10.0 * base : base;
		});
		break;
	case ScenarioId::S4:
		a = scenario4(n, delta, spec.seed);
		break;
	case ScenarioId::File:
		break;
	}

	SimilarityMatrix m(n, std::move(a));
	if (!is_robinson(m, true)) {
		const MinimalGapReport w = minimal_gap(m);
		std::ostringstream msg;
		msg << "generate: " << to_string(spec.id) << " with n=" << n << ", delta=" << delta
		    << " is not strictly Robinson at entry (" << w.row << ", " << w.col << ")";
		throw GenerationError(msg.str());
	}
	return m;
}

SimilarityMatrix apply_permutation(const SimilarityMatrix& r, const Permutation& p)
{
	const std::size_t n = r.size();
	if (p.size() != n)
		throw DimensionError("apply_permutation: permutation and matrix sizes differ");
	std::vector<double> a(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			a[i * n + j] = r(p.rank(i) - 1, p.rank(j) - 1);
	return SimilarityMatrix(n, std::move(a));
}

// ---------------------------------------------------------------------------

std::string format_double(double x)
{
	char buf[64];
	const auto res = std::to_chars(buf, buf + sizeof buf, x);
	return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
		s.remove_suffix(1);
	return s;
}

double parse_field(std::string_view field, std::size_t line)
{
	field = trim(field);
	if (!field.empty() && field.front() == '+')
		field.remove_prefix(1);
	double v = 0.0;
	const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
	if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
		throw FormatError("line " + std::to_string(line) + ": malformed number '" +
		                  std::string(field) + "'");
	if (!std::isfinite(v))
		throw FormatError("line " + std::to_string(line) + ": non-finite entry");
	return v;
}

} // namespace

SimilarityMatrix parse_matrix_csv(std::string_view text, CsvLoadInfo* info)
{
	std::vector<std::vector<double>> rows;
	std::size_t line_no = 0;
	while (!text.empty()) {
		const std::size_t nl = text.find('\n');
		std::string_view line = text.substr(0, nl);
		text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
		++line_no;
		if (trim(line).empty())
			continue;
		std::vector<double> row;
		while (true) {
			const std::size_t comma = line.find(',');
			row.push_back(parse_field(line.substr(0, comma), line_no));
			if (comma == std::string_view::npos)
				break;
			line.remove_prefix(comma + 1);
		}
		rows.push_back(std::move(row));
	}

	const std::size_t n = rows.size();
	if (n == 0)
		throw FormatError("matrix CSV is empty");
	for (std::size_t i = 0; i < n; ++i)
		if (rows[i].size() != n)
			throw FormatError("matrix CSV is not square: row " + std::to_string(i + 1) + " has " +
			                  std::to_string(rows[i].size()) + " fields, expected " +
			                  std::to_string(n));

	CsvLoadInfo local;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) {
			const double skew = std::abs(rows[i][j] - rows[j][i]);
			local.max_asymmetry = std::max(local.max_asymmetry, skew);
			if (skew != 0.0) {
				rows[i][j] = rows[j][i] = 0.5 * (rows[i][j] + rows[j][i]);
				local.symmetrized = true;
			}
		}
	if (info)
		*info = local;
	return SimilarityMatrix::from_rows(rows);
}

SimilarityMatrix load_matrix_csv(const std::string& path, CsvLoadInfo* info)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw FormatError("cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_matrix_csv(buf.str(), info);
}

std::string format_matrix_csv(const SimilarityMatrix& m)
{
	std::string out;
	for (std::size_t i = 0; i < m.size(); ++i) {
		for (std::size_t j = 0; j < m.size(); ++j) {
			if (j)
				out += ',';
			out += format_double(m(i, j));
		}
		out += '\n';
	}
	return out;
}

void save_matrix_csv(const SimilarityMatrix& m, const std::string& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw FormatError("cannot write '" + path + "'");
	out << format_matrix_csv(m);
	if (!out)
		throw FormatError("write to '" + path + "' failed");
}

} // namespace aseriation
