/// @file  errors.hpp
/// @brief Exception types raised by the library.

#pragma once

#include <stdexcept>
#include <string>

namespace aseriation {

/// Two objects that must agree on the number of items do not.
struct DimensionError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/// A sample of the pair {i,i} was requested, or a comparison was asked
/// about coincident items.
struct SelfPairError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/// A per-pair sample count evaluated to zero.
struct DegenerateBudgetError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to enumerate beyond its size limit.
struct SizeLimitError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/// Malformed input file or configuration.
struct FormatError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// An iterative numerical method failed to converge.
struct NumericalError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// A generator produced a matrix that violates its own structural contract.
struct GenerationError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace aseriation
