#include <aseriation/jacobi.hpp>

#include <aseriation/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aseriation {

std::vector<double> SymmetricEigen::vector(std::size_t j) const
{
	return {vectors.begin() + static_cast<std::ptrdiff_t>(j * n),
	        vectors.begin() + static_cast<std::ptrdiff_t>((j + 1) * n)};
}

namespace {

double off_norm(const std::vector<double>& a, std::size_t n)
{
	double s = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if (i != j)
				s += a[i * n + j] * a[i * n + j];
	return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigen(std::span<const double> input, std::size_t n, double tol,
                            std::size_t max_sweeps)
{
	if (input.size() != n * n)
		throw std::invalid_argument("jacobi_eigen: expected an n*n matrix");
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			if (input[i * n + j] != input[j * n + i])
				throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");

	std::vector<double> a(input.begin(), input.end());
	std::vector<double> v(n * n, 0.0); // row-major while iterating
	for (std::size_t i = 0; i < n; ++i)
		v[i * n + i] = 1.0;

	const double fro = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
	const double threshold = tol * std::max(1.0, fro);

	std::size_t sweep = 0;
	while (off_norm(a, n) > threshold) {
		if (sweep == max_sweeps)
			throw NumericalError("jacobi_eigen: no convergence after " +
			                     std::to_string(max_sweeps) + " sweeps");
		++sweep;
		for (std::size_t p = 0; p + 1 < n; ++p) {
			for (std::size_t q = p + 1; q < n; ++q) {
				const double apq = a[p * n + q];
				if (apq == 0.0)
					continue;
				const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
				const double t = (theta >= 0.0 ? 1.0 : -1.0) /
				                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
				const double c = 1.0 / std::sqrt(t * t + 1.0);
				const double s = t * c;

				for (std::size_t k = 0; k < n; ++k) {
					const double akp = a[k * n + p];
					const double akq = a[k * n + q];
					a[k * n + p] = c * akp - s * akq;
					a[k * n + q] = s * akp + c * akq;
				}
				for (std::size_t k = 0; k < n; ++k) {
					const double apk = a[p * n + k];
					const double aqk = a[q * n + k];
					a[p * n + k] = c * apk - s * aqk;
					a[q * n + k] = s * apk + c * aqk;
				}
				a[p * n + q] = 0.0;
				a[q * n + p] = 0.0;
				for (std::size_t k = 0; k < n; ++k) {
					const double vkp = v[k * n + p];
					const double vkq = v[k * n + q];
					v[k * n + p] = c * vkp - s * vkq;
					v[k * n + q] = s * vkp + c * vkq;
				}
			}
		}
	}

	std::vector<std::size_t> idx(n);
	std::iota(idx.begin(), idx.end(), std::size_t{0});
	std::stable_sort(idx.begin(), idx.end(),
	                 [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

	SymmetricEigen out;
	out.n = n;
	out.sweeps = sweep;
	out.values.resize(n);
	out.vectors.resize(n * n);
	for (std::size_t j = 0; j < n; ++j) {
		out.values[j] = a[idx[j] * n + idx[j]];
		for (std::size_t i = 0; i < n; ++i)
			out.vectors[j * n + i] = v[i * n + idx[j]];
	}
	return out;
}

} // namespace aseriation
