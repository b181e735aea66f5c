#include "tmn/matrix.hpp"

#include "tmn/error.hpp"

#include <cmath>
#include <sstream>

namespace tmn {

namespace {

void check_entry(std::size_t i, std::size_t j, double v)
{
	if (!std::isfinite(v)) {
		std::ostringstream os;
		os << "entry (" << i + 1 << ", " << j + 1 << ") is not finite";
		throw Error(Errc::NonFiniteEntry, os.str());
	}
	if (v < 0.0) {
		std::ostringstream os;
		os.precision(17);
		os << "entry (" << i + 1 << ", " << j + 1 << ") is negative: " << v;
		throw Error(Errc::NegativeEntry, os.str());
	}
}

} // namespace

MassFlowMatrix MassFlowMatrix::from_dense(std::size_t n, std::vector<double> entries)
{
	if (n == 0)
		throw Error(Errc::EmptyMatrix, "mass-flow matrix has no vertices");
	if (entries.size() != n * n)
		throw Error(Errc::NonSquare, "dense buffer size does not match n*n");
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			check_entry(i, j, entries[i * n + j]);
	return MassFlowMatrix(n, std::move(entries));
}

MassFlowMatrix MassFlowMatrix::zeros(std::size_t n)
{
	if (n == 0)
		throw Error(Errc::EmptyMatrix, "mass-flow matrix has no vertices");
	return MassFlowMatrix(n, std::vector<double>(n * n, 0.0));
}

std::vector<double> MassFlowMatrix::stocks() const
{
	std::vector<double> out(n_);
	for (std::size_t k = 0; k < n_; ++k)
		out[k] = stock(k);
	return out;
}

std::vector<std::vector<double>> MassFlowMatrix::rows() const
{
	std::vector<std::vector<double>> out(n_);
	for (std::size_t i = 0; i < n_; ++i)
		out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_),
		              entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
	return out;
}

MassFlowMatrix MassFlowMatrix::permuted(std::span<const std::size_t> perm) const
{
	if (perm.size() != n_)
		throw Error(Errc::InvalidSpec, "permutation length does not match vertex count");
	std::vector<bool> seen(n_, false);
	for (std::size_t p : perm) {
		if (p >= n_ || seen[p])
			throw Error(Errc::InvalidSpec, "not a permutation of the vertices");
		seen[p] = true;
	}
	std::vector<double> out(n_ * n_, 0.0);
	for (std::size_t i = 0; i < n_; ++i)
		for (std::size_t j = 0; j < n_; ++j)
			out[perm[i] * n_ + perm[j]] = entries_[i * n_ + j];
	return MassFlowMatrix(n_, std::move(out));
}

MassFlowMatrix MassFlowMatrix::with_stocks(std::span<const double> stocks) const
{
	if (stocks.size() != n_)
		throw Error(Errc::InvalidSpec, "stock vector length does not match vertex count");
	auto out = entries_;
	for (std::size_t k = 0; k < n_; ++k) {
		check_entry(k, k, stocks[k]);
		out[k * n_ + k] = stocks[k];
	}
	return MassFlowMatrix(n_, std::move(out));
}

MassFlowMatrix validate_matrix(const std::vector<std::vector<double>>& raw)
{
	if (raw.empty())
		throw Error(Errc::EmptyMatrix, "mass-flow matrix has no rows");
	const std::size_t n = raw.size();
	std::vector<double> dense;
	dense.reserve(n * n);
	for (std::size_t i = 0; i < n; ++i) {
		if (raw[i].size() != n) {
			std::ostringstream os;
			os << "matrix is not square: row " << i + 1 << " has " << raw[i].size()
			   << " entries, expected " << n;
			throw Error(Errc::NonSquare, os.str());
		}
		dense.insert(dense.end(), raw[i].begin(), raw[i].end());
	}
	return MassFlowMatrix::from_dense(n, std::move(dense));
}

} // namespace tmn
