#pragma once

#include "tmn/cycles.hpp"
#include "tmn/digraph.hpp"
#include "tmn/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tmn {

/// Geometric, harmonic and arithmetic mean of the flows around one cycle.
/// hm <= gm <= am.
struct CycleMeans
{
	double gm = 0.0;
	double hm = 0.0;
	double am = 0.0;
};

// All three throw NonPositiveFlow if a cycle flow is <= 0.
double cycle_gm(const DirectedCycle& phi);
double cycle_hm(const DirectedCycle& phi);
double cycle_am(const DirectedCycle& phi);
CycleMeans cycle_means(const DirectedCycle& phi);

struct CycleDependentIndicators
{
	// Absolute circularities; empty when the digraph has no arcs at all.
	std::optional<double> lambda_ga;
	std::optional<double> lambda_ha;
	std::optional<double> lambda_aa;
	// Relative circularities (sums of cycle means), kg/s.
	double lambda_gr = 0.0;
	double lambda_hr = 0.0;
	double lambda_ar = 0.0;
	std::size_t lambda_y = 0;
	double lambda_s = 0.0;
	/// Σ of 𝒬 flows, the non-circular part of every absolute circularity.
	double q_flow = 0.0;
};

struct CycleIndependentIndicators
{
	double lambda_c = 0.0;
	std::optional<double> lambda_d; // empty when no flow runs below the diagonal
	double theta_s = 0.0;
	double theta_f = 0.0;
	std::optional<double> theta_d; // empty for single-vertex networks
	std::vector<double> theta_a;
};

/**
 * Circularity and auxiliary indicators of one mass-flow matrix.
 *
 * Undefined quantities are empty optionals and their names are listed in
 * `flags` (in field order).
 */
struct IndicatorReport
{
	std::optional<double> lambda_ga;
	double lambda_gr = 0.0;
	std::optional<double> lambda_ha;
	double lambda_hr = 0.0;
	std::optional<double> lambda_aa;
	double lambda_ar = 0.0;
	double lambda_c = 0.0;
	std::size_t lambda_y = 0;
	double lambda_s = 0.0;
	std::optional<double> lambda_d;
	double theta_s = 0.0;
	double theta_f = 0.0;
	std::optional<double> theta_d;
	std::vector<double> theta_a;
	std::vector<std::string> flags;

	friend bool operator==(const IndicatorReport&, const IndicatorReport&) = default;
};

CycleDependentIndicators cycle_dependent_indicators(const CycleAnalysis& analysis);

/// Flow sums use the digraph's arcs, so entries at or below eps_flow count as
/// absent flows; stock sums use the diagonal of `gamma`.
CycleIndependentIndicators cycle_independent_indicators(const MassFlowMatrix& gamma, const MassFlowDigraph& d);

struct ReportOptions
{
	double eps_flow = kDefaultEpsFlow;
	std::size_t max_cycles = kDefaultMaxCycles;
};

/// Builds the digraph, enumerates cycles and combines both indicator groups.
/// Propagates CycleBudgetExceeded.
IndicatorReport compute_report(const MassFlowMatrix& gamma, const ReportOptions& opts = {});

IndicatorReport combine(const CycleDependentIndicators& dep, const CycleIndependentIndicators& indep);

/// Names of the scalar indicators in report/CSV order (theta_a excluded).
const std::vector<std::string>& scalar_indicator_names();

/// Scalar value by position in scalar_indicator_names(); empty if undefined.
std::optional<double> scalar_indicator(const IndicatorReport& r, std::size_t index);

} // namespace tmn
