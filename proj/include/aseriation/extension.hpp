/// @file  extension.hpp
/// @brief Seriation at a chosen resolution: items that cannot be separated
/// from the current ordering by a margin are discarded instead of inserted.

#pragma once

#include <aseriation/asii.hpp>
#include <aseriation/core.hpp>
#include <aseriation/oracle.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aseriation {

enum class MarginOutcome { Left, Middle, Right, Null };

const char* to_string(MarginOutcome b);

/// With h = delta_tilde / 2, checked in this order:
///   Middle  m_lr + h < min(m_kl, m_kr)
///   Left    m_kr + h < min(m_kl, m_lr)
///   Right   m_kl + h < min(m_kr, m_lr)
///   Null    otherwise
MarginOutcome decide_margin(double m_lr, double m_kl, double m_kr, double delta_tilde);

/// Margin version of test(): same sampling, decide_margin() on the means.
MarginOutcome test_margin(Oracle& oracle, Item k, Item l, Item r, std::uint64_t t0,
                          double delta_tilde);

enum class DiscardReason { FirstTestNull, ValidationFailed };

const char* to_string(DiscardReason r);

struct Discard {
	Item item;
	DiscardReason reason;
	bool operator==(const Discard&) const = default;
};

struct ExtensionResult {
	/// Retained items and their ordering.
	RankMap kept;
	/// Items dropped, in processing order.
	std::vector<Discard> discarded;
	/// Items of the starting ordering (never tested).
	std::vector<Item> initial;
	std::size_t n_tilde = 0;
	/// Some per-test budget evaluated below 3 and was raised to 3.
	bool budget_clamped = false;
	/// Validations whose neighbour ranks did not both exist.
	std::size_t degenerate_validations = 0;
};

/// Iterative insertion with margin tests at the extremes and a margin
/// validation of every BBS placement, each with budget floor(T / (4 n~)).
/// BBS itself keeps its own per-test budget.
ExtensionResult asii_extension(Oracle& oracle, std::uint64_t budget_T, double delta_tilde,
                               const std::optional<Permutation>& partial = std::nullopt);

/// Largest item count accepted by verify_delta_maximal.
inline constexpr std::size_t kMaximalityMatrixLimit = 12;
inline constexpr std::size_t kMaximalitySubsetLimit = 10;

/// Some strict Robinson ordering of m has minimal gap >= delta.
bool in_gap_class(const SimilarityMatrix& m, double delta);

/// s is delta-maximal in m: m restricted to s is pre-R with minimal gap at
/// least delta, and adding any other single item breaks that. Throws
/// SizeLimitError past the limits above.
bool verify_delta_maximal(const SimilarityMatrix& m, std::span<const Item> s, double delta);

} // namespace aseriation
