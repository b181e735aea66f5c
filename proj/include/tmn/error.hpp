#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmn {

enum class Errc {
	EmptyMatrix,
	NonSquare,
	NegativeEntry,
	NonFiniteEntry,
	InvalidSpec,
	InvalidDistribution,
	UnsupportedDistribution,
	DistributionEntryPresent,
	ExpressionDomainError,
	ExpressionNeedsTime,
	TimeOutsideWindow,
	SyntaxError,
	UnknownFunction,
	NonPositiveFlow,
	CycleBudgetExceeded,
	TooLargeForOracle,
	InvalidGrid,
	GridMismatch,
	Format,
	Io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
	Error(Errc code, const std::string& what)
		: std::runtime_error(what)
		, code_(code)
	{
	}

	Errc code() const noexcept { return code_; }

private:
	Errc code_;
};

/// Raised by the expression parser. `offset` is a byte offset into the source
/// text and never exceeds its length.
class ParseError : public Error
{
public:
	ParseError(Errc code,
	           std::size_t offset,
	           std::vector<std::string> expected,
	           const std::string& what)
		: Error(code, what)
		, offset_(offset)
		, expected_(std::move(expected))
	{
	}

	std::size_t offset() const noexcept { return offset_; }
	const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
	std::size_t offset_;
	std::vector<std::string> expected_;
};

} // namespace tmn
