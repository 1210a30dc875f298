/// @file  jacobi.hpp
/// @brief Cyclic Jacobi eigendecomposition of small dense symmetric matrices.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aseriation {

struct SymmetricEigen {
	std::size_t n = 0;
	/// Ascending; equal eigenvalues keep their diagonal order.
	std::vector<double> values;
	/// Column-major: entry (i, j) is component i of eigenvector j.
	std::vector<double> vectors;
	std::size_t sweeps = 0;

	double vector_entry(std::size_t i, std::size_t j) const { return vectors[j * n + i]; }
	std::vector<double> vector(std::size_t j) const;
};

/// Sweeps the pairs (p, q), p < q, in row order until the off-diagonal
/// Frobenius norm is at most tol * max(1, ||A||_F). Throws NumericalError if
/// max_sweeps is reached first and std::invalid_argument for non-square or
/// asymmetric input. a is row-major n*n.
SymmetricEigen jacobi_eigen(std::span<const double> a, std::size_t n, double tol = 1e-10,
                            std::size_t max_sweeps = 100);

} // namespace aseriation
