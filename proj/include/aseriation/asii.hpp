/// @file  asii.hpp
/// @brief Active seriation by iterative insertion.
///
/// Items are inserted one at a time into a growing ordering. Each insertion
/// first compares the new item against the two current extremes; if it falls
/// strictly inside, a noisy binary search with backtracking (BBS) locates its
/// slot. Per-test sample budgets follow the fixed allocation
///
///   extremes test      floor(T / (3 n~))
///   each BBS test      floor(T / (3 n~ T_k)),   T_k = 3 ceil(log2 k)
///
/// where n~ is the number of items not covered by the initial ordering and
/// k is the size of the search (current ordering plus one).

#pragma once

#include <aseriation/core.hpp>
#include <aseriation/oracle.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace aseriation {

/// Position of k relative to the pair (l, r).
enum class TestOutcome { Left = -1, Middle = 0, Right = 1 };

const char* to_string(TestOutcome b);

/// Middle if m_lr < min(m_kl, m_kr), else Left if m_kl > m_kr, else Right.
/// Ties therefore resolve toward Right.
TestOutcome decide(double m_lr, double m_kl, double m_kr);

/// Samples {l,r}, {k,l}, {k,r} floor(t0/3) times each and applies decide().
/// Consumes exactly 3*floor(t0/3) oracle samples. Throws SelfPairError for
/// coincident items and DegenerateBudgetError when floor(t0/3) == 0.
TestOutcome test(Oracle& oracle, Item k, Item l, Item r, std::uint64_t t0);

/// Smallest c with 2^c >= k.
std::size_t ceil_log2(std::size_t k);

/// T_k = 3 ceil(log2 k).
inline std::size_t bbs_iterations(std::size_t k) { return 3 * ceil_log2(k); }

/// Search interval, as the items at its two ends.
struct Interval {
	Item left;
	Item right;
	bool operator==(const Interval&) const = default;
};

/// The list of nested search intervals. Entry 0 is the root and is never
/// removed; back() is the active interval.
class IntervalStack {
public:
	explicit IntervalStack(Interval root) : entries_{root} {}

	const Interval& active() const { return entries_.back(); }
	const Interval& operator[](std::size_t w) const { return entries_[w]; }
	std::span<const Interval> entries() const { return entries_; }

	/// Index of the last entry (0 when only the root is present).
	std::size_t depth() const { return entries_.size() - 1; }

	void push(Interval iv) { entries_.push_back(iv); }

	/// Throws std::logic_error when only the root is left.
	void pop();

	/// Each entry's rank span lies inside its predecessor's.
	bool nested(const Ordering& order) const;

private:
	std::vector<Interval> entries_;
};

enum class BbsAction { Backtrack, DescendLeft, DescendRight, Hold };

const char* to_string(BbsAction a);

/// One BBS iteration. last_good and potential are only filled when a true
/// ordering was supplied; last_good is empty if no interval in the stack
/// contains k under the truth.
struct BbsStep {
	std::size_t t;
	BbsAction action;
	std::size_t depth;
	std::optional<std::size_t> last_good;
	std::optional<long long> potential;
};

/// Per-step record of a search. With a truth supplied, potential is
/// N_t = depth + ceil(log2 k) - 2 * last_good.
struct BbsTrace {
	std::optional<std::size_t> initial_last_good;
	std::optional<long long> initial_potential;
	std::vector<BbsStep> steps;
};

struct BbsResult {
	/// Rank of the left end of the final interval plus one.
	Rank position = 0;
	Interval final_interval{};
	std::size_t iterations = 0;
	std::size_t tests = 0;
	std::size_t backtracks = 0;
	/// Every stack state satisfied the nesting invariant.
	bool nested = true;
	/// Set only when options.record_trace is true.
	std::optional<BbsTrace> trace;
};

/// Three-way comparison used by the search: where does k sit relative to
/// (l, r)? Lets tests script outcomes without an oracle.
using TestFn = std::function<TestOutcome(Item k, Item l, Item r)>;

struct BbsOptions {
	bool record_trace = false;
	/// True latent ordering over the whole universe; enables last_good and
	/// potential in the trace. Instrumentation only.
	const Permutation* truth = nullptr;
};

/// Binary & backtracking search for the slot of k in order (size >= 2).
/// Runs exactly T_k iterations with k = order.size() + 1 and returns a rank
/// in {2..order.size()}. A final interval wider than one rank is not an
/// error.
BbsResult binary_backtracking_search(const Ordering& order, Item k, const TestFn& test,
                                     const BbsOptions& options = {});

/// Per-test budget floor(T / (3 n~ T_k)) for a search over order_size items.
std::uint64_t bbs_test_budget(std::uint64_t budget_T, std::size_t n_tilde,
                              std::size_t order_size);

/// Result of locating one item inside the current extremes.
struct SearchOutcome {
	Rank position = 0;
	std::size_t tests = 0;
	/// t0 handed to every test of the search, after clamping.
	std::uint64_t test_budget = 0;
	bool clamped = false;
	std::optional<BbsTrace> trace;
};

/// BBS driven by oracle tests with the standard per-test budget. Budgets
/// below 3 are raised to 3 and reported as clamped.
SearchOutcome bbs(Oracle& oracle, const Ordering& order, Item k, std::uint64_t budget_T,
                  std::size_t n_tilde, const BbsOptions& options = {});

/// How an insertion procedure places an item known to lie strictly inside.
/// Receives n~ of the enclosing run.
using InsertionSearch =
    std::function<SearchOutcome(Oracle&, const Ordering&, Item k, std::size_t n_tilde)>;

struct InsertionRecord {
	Item item;
	TestOutcome extremes_outcome;
	Rank position;
	std::uint64_t extremes_samples = 0;
	std::uint64_t search_samples = 0;
	std::size_t search_tests = 0;
	std::uint64_t search_test_budget = 0;
	std::optional<BbsTrace> trace;
	/// With a truth supplied: the ordering after this insertion agrees with
	/// the truth (up to reversal) on the items inserted so far.
	std::optional<bool> coherent;
};

struct InsertionResult {
	Permutation ordering;
	std::size_t n_tilde = 0;
	/// t0 of each extremes test, after clamping.
	std::uint64_t extremes_test_budget = 0;
	/// Some per-test budget evaluated below 3 and was raised to 3; the run
	/// may then overspend budget_T.
	bool budget_clamped = false;
	std::vector<InsertionRecord> insertions;
};

/// Starting point shared by the insertion procedures: the supplied partial
/// ordering if it covers at least three items, else the ordering (0, 1).
struct InsertionStart {
	Ordering ordering;
	std::size_t n_tilde;
};

/// Throws DimensionError if partial covers more than n items.
InsertionStart insertion_start(std::size_t n, const std::optional<Permutation>& partial);

/// Generic iterative insertion: extremes test with budget floor(T/(3 n~)),
/// then search for items reported in the middle.
InsertionResult iterative_insertion(Oracle& oracle, std::uint64_t budget_T,
                                    const std::optional<Permutation>& partial,
                                    const InsertionSearch& search,
                                    const Permutation* truth = nullptr);

struct AsiiOptions {
	/// Correct ordering of items 0..p-1; ignored when p < 3.
	std::optional<Permutation> partial;
	bool record_trace = false;
	const Permutation* truth = nullptr;
};

/// Full ASII. The output ranks item 0 before item 1 when starting from
/// scratch. Total consumption stays within budget_T unless budget_clamped.
InsertionResult asii(Oracle& oracle, std::uint64_t budget_T, const AsiiOptions& options = {});

} // namespace aseriation
