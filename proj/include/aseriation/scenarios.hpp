/// @file  scenarios.hpp
/// @brief Synthetic Robinson families and CSV exchange of similarity matrices.

#pragma once

#include <aseriation/core.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aseriation {

enum class ScenarioId { S1, S2, S3, S4, File };

std::string_view to_string(ScenarioId id);
/// Accepts "s1".."s4" and "file"; throws FormatError otherwise.
ScenarioId parse_scenario(std::string_view text);

struct ScenarioSpec {
	ScenarioId id = ScenarioId::S1;
	std::size_t n = 10;
	double delta = 1.0;
	/// Drives s4's random entries; unused by s1-s3.
	std::uint64_t seed = 0;
	/// Matrix CSV for ScenarioId::File.
	std::optional<std::string> path;
};

/// Builds the unpermuted R-matrix (ranks equal item indices). With 1-based
/// i > j and d = i - j:
///   s1  delta (n - d)
///   s2  delta (n - d) max(j, n - i)^1.5, diagonal = largest entry + delta
///   s3  10 delta (n - d) max(j, n - i) when d <= n/4, else delta (n - d)
///       max(j, n - i); diagonal as s2
///   s4  diagonal ~ U(1, 10); then for d = 1..n-1, j = 1..n-d:
///       R(j+d, j) = min(R(j+d-1, j), R(j+d, j+1)) - U(delta, 10 delta)
/// Throws std::invalid_argument for n < 2 or delta <= 0, and
/// GenerationError (with the offending entry) if the result is not strictly
/// Robinson. File loads the CSV at path.
SimilarityMatrix generate(const ScenarioSpec& spec);

/// M(i, j) = R(rank(i) - 1, rank(j) - 1): item i sits at rank p.rank(i).
SimilarityMatrix apply_permutation(const SimilarityMatrix& r, const Permutation& p);

/// Asymmetry above this is reported by load_matrix_csv.
inline constexpr double kSymmetryTolerance = 1e-9;

struct CsvLoadInfo {
	/// Largest |a_ij - a_ji| in the file. Any asymmetry is averaged away;
	/// callers should warn when this exceeds kSymmetryTolerance.
	double max_asymmetry = 0.0;
	/// Entries were replaced by (a_ij + a_ji) / 2.
	bool symmetrized = false;
};

/// Headerless comma-separated square matrix. Throws FormatError on malformed
/// fields, ragged or non-square shape, or non-finite values.
SimilarityMatrix load_matrix_csv(const std::string& path, CsvLoadInfo* info = nullptr);
SimilarityMatrix parse_matrix_csv(std::string_view text, CsvLoadInfo* info = nullptr);

/// Writes each entry in shortest round-trip form (at most 17 significant
/// digits), so loading returns identical doubles.
void save_matrix_csv(const SimilarityMatrix& m, const std::string& path);
std::string format_matrix_csv(const SimilarityMatrix& m);

/// Shortest round-tripping decimal form of x.
std::string format_double(double x);

} // namespace aseriation
