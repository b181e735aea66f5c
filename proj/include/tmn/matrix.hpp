#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tmn {

/// Flows at or below this value do not produce an arc.
inline constexpr double kDefaultEpsFlow = 1e-12;

/**
 * Mass-flow matrix of a material network at one instant.
 *
 * Square, nonnegative, row-major. Diagonal entries are stocks (kg) and
 * off-diagonal entries (i, j) are flow rates from vertex i to vertex j
 * (kg/s). Indices are 0-based; user-facing I/O adds one.
 */
class MassFlowMatrix
{
public:
	/// Validates a row-major buffer of n*n entries.
	static MassFlowMatrix from_dense(std::size_t n, std::vector<double> entries);
	static MassFlowMatrix zeros(std::size_t n);

	std::size_t size() const noexcept { return n_; }
	double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
	double stock(std::size_t k) const { return entries_[k * n_ + k]; }
	std::span<const double> entries() const noexcept { return entries_; }

	std::vector<double> stocks() const;
	std::vector<std::vector<double>> rows() const;

	/// Relabels vertices: result(perm[i], perm[j]) == (*this)(i, j).
	MassFlowMatrix permuted(std::span<const std::size_t> perm) const;

	/// Copy with the diagonal replaced.
	MassFlowMatrix with_stocks(std::span<const double> stocks) const;

	friend bool operator==(const MassFlowMatrix&, const MassFlowMatrix&) = default;

private:
	MassFlowMatrix(std::size_t n, std::vector<double> entries)
		: n_(n)
		, entries_(std::move(entries))
	{
	}

	std::size_t n_ = 0;
	std::vector<double> entries_;
};

/// Rejects empty, ragged/non-square, negative and non-finite input. Never clamps.
MassFlowMatrix validate_matrix(const std::vector<std::vector<double>>& raw);

} // namespace tmn
