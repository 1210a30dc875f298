/// @file  core.hpp
/// @brief Permutations, similarity matrices and the structural checks on them.
///
/// Items are 0-based indices into the similarity matrix. Ranks are 1-based:
/// a permutation assigns rank 1..n to items 0..n-1.

#pragma once

#include <aseriation/errors.hpp>

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace aseriation {

using Item = std::size_t;
using Rank = std::size_t;

/// A bijection from items {0..n-1} onto ranks {1..n}.
class Permutation {
public:
	Permutation() = default;

	/// Takes ranks[i] = rank of item i. Throws std::invalid_argument unless
	/// the ranks are exactly {1..n}.
	explicit Permutation(std::vector<Rank> ranks);

	static Permutation identity(std::size_t n);

	/// Builds the permutation that ranks order[0] first, order[1] second, ...
	static Permutation from_order(std::span<const Item> order);

	std::size_t size() const { return pos_.size(); }
	Rank rank(Item i) const { return pos_.at(i); }
	std::span<const Rank> ranks() const { return pos_; }

	/// Items listed by increasing rank.
	std::vector<Item> order() const;

	Permutation inverse() const;

	bool operator==(const Permutation&) const = default;

private:
	std::vector<Rank> pos_;
};

/// rank -> n+1-rank.
Permutation reverse(const Permutation& p);

/// Returns p or reverse(p), whichever ranks item 0 before item 1.
Permutation canonical(const Permutation& p);

/// True iff estimate equals truth or its reversal. Throws DimensionError on
/// size mismatch.
bool is_recovery_success(const Permutation& estimate, const Permutation& truth);

/// Relative ranks of the listed items under p: the result ranks items[a]
/// (as item a) by their order in p.
Permutation restrict_to(const Permutation& p, std::span<const Item> items);

/// A bijection from a subset S of the items onto {1..|S|}.
class RankMap {
public:
	RankMap() = default;

	/// Items listed by increasing rank.
	explicit RankMap(std::vector<Item> order);

	std::size_t size() const { return order_.size(); }
	std::span<const Item> order() const { return order_; }

	/// Members of S in increasing item index.
	std::vector<Item> items() const;

	bool contains(Item i) const;

	/// Rank of i, or nullopt if i is not in S.
	std::optional<Rank> rank(Item i) const;

	/// The ordering as a permutation of the members, with members relabelled
	/// 0..|S|-1 in increasing item index.
	Permutation relative() const;

private:
	std::vector<Item> order_;
};

/// Dense symmetric matrix of finite similarity scores.
class SimilarityMatrix {
public:
	SimilarityMatrix() = default;

	/// Row-major n*n entries. Throws std::invalid_argument if the entries are
	/// not finite or not exactly symmetric.
	SimilarityMatrix(std::size_t n, std::vector<double> entries);

	static SimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);

	std::size_t size() const { return n_; }
	double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
	std::span<const double> data() const { return a_; }

	/// Principal submatrix on the listed items, in that order.
	SimilarityMatrix submatrix(std::span<const Item> items) const;

	bool operator==(const SimilarityMatrix&) const = default;

private:
	std::size_t n_ = 0;
	std::vector<double> a_;
};

/// Robinson check: for i <= j, R(i,j) > R(i-1,j) and R(i,j) > R(i,j+1)
/// wherever the neighbour exists; >= when strict is false.
bool is_robinson(const SimilarityMatrix& m, bool strict = true);

/// Which adjacent differences enter the minimal gap. Full uses every
/// well-defined difference on the upper triangle (diagonal included);
/// Interior restricts to 1 < i < j <= n-1 in 1-based indices.
enum class GapRange { Full, Interior };

struct MinimalGapReport {
	enum class Kind { Row, Column };

	/// Minimum adjacent difference; +infinity when no difference is defined.
	double gap = std::numeric_limits<double>::infinity();
	/// Entry (row, col) of the minimising difference, 0-based.
	std::size_t row = 0;
	std::size_t col = 0;
	/// Row: R(row,col) - R(row-1,col). Column: R(row,col) - R(row,col+1).
	Kind kind = Kind::Row;
};

/// Minimal gap of an R-matrix. A non-positive gap reports a violated
/// inequality at the witness.
MinimalGapReport minimal_gap(const SimilarityMatrix& m,
                             GapRange range = GapRange::Full);

/// Largest n accepted by brute_force_seriate.
inline constexpr std::size_t kBruteForceLimit = 10;

/// Enumerates the permutations that make m strictly Robinson, returning one
/// ranking item 0 before item 1, or nullopt. Throws SizeLimitError for
/// n > kBruteForceLimit.
std::optional<Permutation> brute_force_seriate(const SimilarityMatrix& m);

/// Calls visit(order) for every ordering (items by rank) under which m is
/// strictly Robinson, one per reversal pair. Pruned depth-first search; the
/// caller is responsible for keeping n small.
void for_each_robinson_order(const SimilarityMatrix& m,
                             const std::function<void(std::span<const Item>)>& visit);

/// A growing ordering of a subset of the items with O(1) rank lookup.
/// This is the working state of the insertion algorithms.
class Ordering {
public:
	/// Empty ordering over the universe {0..universe-1}.
	explicit Ordering(std::size_t universe);

	/// Ordering of items 0..p.size()-1 by p's ranks.
	Ordering(std::size_t universe, const Permutation& p);

	std::size_t universe() const { return rank_of_.size(); }
	std::size_t size() const { return items_.size(); }
	bool empty() const { return items_.empty(); }

	Item at_rank(Rank r) const { return items_[r - 1]; }
	Rank rank_of(Item i) const { return rank_of_[i]; }
	bool contains(Item i) const { return rank_of_[i] != 0; }
	Item first() const { return items_.front(); }
	Item last() const { return items_.back(); }
	std::span<const Item> items() const { return items_; }

	/// Inserts i so that it receives rank r in {1..size()+1}; items at rank
	/// >= r move up by one.
	void insert_at(Item i, Rank r);

	/// Requires the ordering to cover the whole universe.
	Permutation to_permutation() const;
	RankMap to_rank_map() const { return RankMap(items_); }

private:
	std::vector<Item> items_;
	std::vector<Rank> rank_of_;
};

} // namespace aseriation
