#include "tmn/error.hpp"

namespace tmn {

std::string_view to_string(Errc code) noexcept
{
	switch (code) {
	case Errc::EmptyMatrix: return "EmptyMatrix";
	case Errc::NonSquare: return "NonSquare";
	case Errc::NegativeEntry: return "NegativeEntry";
	case Errc::NonFiniteEntry: return "NonFiniteEntry";
	case Errc::InvalidSpec: return "InvalidSpec";
	case Errc::InvalidDistribution: return "InvalidDistribution";
	case Errc::UnsupportedDistribution: return "UnsupportedDistribution";
	case Errc::DistributionEntryPresent: return "DistributionEntryPresent";
	case Errc::ExpressionDomainError: return "ExpressionDomainError";
	case Errc::ExpressionNeedsTime: return "ExpressionNeedsTime";
	case Errc::TimeOutsideWindow: return "TimeOutsideWindow";
	case Errc::SyntaxError: return "SyntaxError";
	case Errc::UnknownFunction: return "UnknownFunction";
	case Errc::NonPositiveFlow: return "NonPositiveFlow";
	case Errc::CycleBudgetExceeded: return "CycleBudgetExceeded";
	case Errc::TooLargeForOracle: return "TooLargeForOracle";
	case Errc::InvalidGrid: return "InvalidGrid";
	case Errc::GridMismatch: return "GridMismatch";
	case Errc::Format: return "Format";
	case Errc::Io: return "Io";
	}
	return "Unknown";
}

} // namespace tmn
