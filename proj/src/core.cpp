#include <aseriation/core.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aseriation {

Permutation::Permutation(std::vector<Rank> ranks) : pos_(std::move(ranks))
{
	std::vector<bool> seen(pos_.size() + 1, false);
	for (Rank r : pos_) {
		if (r < 1 || r > pos_.size() || seen[r])
			throw std::invalid_argument("Permutation: ranks are not a bijection onto 1..n");
		seen[r] = true;
	}
}

Permutation Permutation::identity(std::size_t n)
{
	std::vector<Rank> r(n);
	std::iota(r.begin(), r.end(), Rank{1});
	return Permutation(std::move(r));
}

Permutation Permutation::from_order(std::span<const Item> order)
{
	std::vector<Rank> r(order.size(), 0);
	for (std::size_t k = 0; k < order.size(); ++k) {
		if (order[k] >= order.size())
			throw std::invalid_argument("Permutation::from_order: item out of range");
		r[order[k]] = k + 1;
	}
	return Permutation(std::move(r));
}

std::vector<Item> Permutation::order() const
{
	std::vector<Item> o(pos_.size());
	for (Item i = 0; i < pos_.size(); ++i)
		o[pos_[i] - 1] = i;
	return o;
}

Permutation Permutation::inverse() const
{
	std::vector<Rank> inv(pos_.size());
	for (Item i = 0; i < pos_.size(); ++i)
		inv[pos_[i] - 1] = i + 1;
	return Permutation(std::move(inv));
}

Permutation reverse(const Permutation& p)
{
	const std::size_t n = p.size();
	std::vector<Rank> r(n);
	for (Item i = 0; i < n; ++i)
		r[i] = n + 1 - p.rank(i);
	return Permutation(std::move(r));
}

Permutation canonical(const Permutation& p)
{
	if (p.size() >= 2 && p.rank(0) > p.rank(1))
		return reverse(p);
	return p;
}

bool is_recovery_success(const Permutation& estimate, const Permutation& truth)
{
	if (estimate.size() != truth.size())
		throw DimensionError("is_recovery_success: permutations differ in size");
	if (estimate == truth)
		return true;
	const std::size_t n = truth.size();
	for (Item i = 0; i < n; ++i)
		if (estimate.rank(i) != n + 1 - truth.rank(i))
			return false;
	return true;
}

Permutation restrict_to(const Permutation& p, std::span<const Item> items)
{
	std::vector<Item> idx(items.size());
	std::iota(idx.begin(), idx.end(), Item{0});
	std::sort(idx.begin(), idx.end(),
	          [&](Item a, Item b) { return p.rank(items[a]) < p.rank(items[b]); });
	return Permutation::from_order(idx);
}

// ---------------------------------------------------------------------------

RankMap::RankMap(std::vector<Item> order) : order_(std::move(order))
{
	auto sorted = items();
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
		throw std::invalid_argument("RankMap: repeated item");
}

std::vector<Item> RankMap::items() const
{
	std::vector<Item> s = order_;
	std::sort(s.begin(), s.end());
	return s;
}

bool RankMap::contains(Item i) const
{
	return std::find(order_.begin(), order_.end(), i) != order_.end();
}

std::optional<Rank> RankMap::rank(Item i) const
{
	auto it = std::find(order_.begin(), order_.end(), i);
	if (it == order_.end())
		return std::nullopt;
	return static_cast<Rank>(it - order_.begin()) + 1;
}

Permutation RankMap::relative() const
{
	const auto members = items();
	std::vector<Rank> r(members.size());
	for (std::size_t a = 0; a < members.size(); ++a)
		r[a] = *rank(members[a]);
	return Permutation(std::move(r));
}

// ---------------------------------------------------------------------------

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), a_(std::move(entries))
{
	if (a_.size() != n_ * n_)
		throw DimensionError("SimilarityMatrix: expected " + std::to_string(n_ * n_) +
		                     " entries, got " + std::to_string(a_.size()));
	for (std::size_t i = 0; i < n_; ++i) {
		for (std::size_t j = 0; j < n_; ++j) {
			const double v = a_[i * n_ + j];
			if (!std::isfinite(v))
				throw std::invalid_argument("SimilarityMatrix: non-finite entry");
			if (j > i && v != a_[j * n_ + i])
				throw std::invalid_argument("SimilarityMatrix: not symmetric at (" +
				                            std::to_string(i) + "," + std::to_string(j) + ")");
		}
	}
}

SimilarityMatrix SimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
	const std::size_t n = rows.size();
	std::vector<double> a;
	a.reserve(n * n);
	for (const auto& row : rows) {
		if (row.size() != n)
			throw DimensionError("SimilarityMatrix::from_rows: matrix is not square");
		a.insert(a.end(), row.begin(), row.end());
	}
	return SimilarityMatrix(n, std::move(a));
}

SimilarityMatrix SimilarityMatrix::submatrix(std::span<const Item> items) const
{
	const std::size_t k = items.size();
	std::vector<double> a(k * k);
	for (std::size_t x = 0; x < k; ++x)
		for (std::size_t y = 0; y < k; ++y)
			a[x * k + y] = (*this)(items[x], items[y]);
	return SimilarityMatrix(k, std::move(a));
}

// ---------------------------------------------------------------------------

bool is_robinson(const SimilarityMatrix& m, bool strict)
{
	const std::size_t n = m.size();
	auto above = [strict](double a, double b) { return strict ? a > b : a >= b; };
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i; j < n; ++j) {
			if (i >= 1 && !above(m(i, j), m(i - 1, j)))
				return false;
			if (j + 1 < n && !above(m(i, j), m(i, j + 1)))
				return false;
		}
	}
	return true;
}

MinimalGapReport minimal_gap(const SimilarityMatrix& m, GapRange range)
{
	const std::size_t n = m.size();
	MinimalGapReport rep;
	auto consider = [&](double d, std::size_t i, std::size_t j, MinimalGapReport::Kind kind) {
		if (d < rep.gap) {
			rep.gap = d;
			rep.row = i;
			rep.col = j;
			rep.kind = kind;
		}
	};
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i; j < n; ++j) {
			// Interior: 1 < i < j <= n-1 in 1-based terms.
			if (range == GapRange::Interior && !(i >= 1 && i < j && j + 2 <= n))
				continue;
			if (i >= 1)
				consider(m(i, j) - m(i - 1, j), i, j, MinimalGapReport::Kind::Row);
			if (j + 1 < n)
				consider(m(i, j) - m(i, j + 1), i, j, MinimalGapReport::Kind::Column);
		}
	}
	return rep;
}

void for_each_robinson_order(const SimilarityMatrix& m,
                             const std::function<void(std::span<const Item>)>& visit)
{
	const std::size_t n = m.size();
	if (n == 0)
		return;
	std::vector<Item> order;
	std::vector<bool> used(n, false);
	order.reserve(n);

	// Appending position p adds every inequality whose largest index is p.
	auto consistent = [&](std::size_t p) {
		const Item x = order[p];
		for (std::size_t i = 1; i <= p; ++i)
			if (!(m(order[i], x) > m(order[i - 1], x)))
				return false;
		if (p >= 1) {
			const Item prev = order[p - 1];
			for (std::size_t i = 0; i < p; ++i)
				if (!(m(order[i], prev) > m(order[i], x)))
					return false;
		}
		return true;
	};

	std::function<void()> extend = [&]() {
		const std::size_t p = order.size();
		if (p == n) {
			visit(order);
			return;
		}
		for (Item x = 0; x < n; ++x) {
			if (used[x])
				continue;
			// One member of each reversal pair: item 0 precedes item 1.
			if (x == 1 && n >= 2 && !used[0])
				continue;
			order.push_back(x);
			used[x] = true;
			if (consistent(p))
				extend();
			used[x] = false;
			order.pop_back();
		}
	};
	extend();
}

std::optional<Permutation> brute_force_seriate(const SimilarityMatrix& m)
{
	if (m.size() > kBruteForceLimit)
		throw SizeLimitError("brute_force_seriate: n = " + std::to_string(m.size()) +
		                     " exceeds the enumeration limit " +
		                     std::to_string(kBruteForceLimit));
	std::optional<Permutation> found;
	for_each_robinson_order(m, [&](std::span<const Item> order) {
		if (!found)
			found = Permutation::from_order(order);
	});
	return found;
}

// ---------------------------------------------------------------------------

Ordering::Ordering(std::size_t universe) : rank_of_(universe, 0) {}

Ordering::Ordering(std::size_t universe, const Permutation& p) : rank_of_(universe, 0)
{
	if (p.size() > universe)
		throw DimensionError("Ordering: permutation larger than the universe");
	items_ = p.order();
	for (Item i = 0; i < p.size(); ++i)
		rank_of_[i] = p.rank(i);
}

void Ordering::insert_at(Item i, Rank r)
{
	if (i >= rank_of_.size() || contains(i))
		throw std::invalid_argument("Ordering::insert_at: item out of range or present");
	if (r < 1 || r > items_.size() + 1)
		throw std::invalid_argument("Ordering::insert_at: rank out of range");
	items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(r - 1), i);
	for (std::size_t k = r - 1; k < items_.size(); ++k)
		rank_of_[items_[k]] = k + 1;
}

Permutation Ordering::to_permutation() const
{
	if (items_.size() != rank_of_.size())
		throw DimensionError("Ordering::to_permutation: ordering is partial");
	return Permutation(rank_of_);
}

} // namespace aseriation
