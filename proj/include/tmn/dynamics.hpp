#pragma once

#include "tmn/execution.hpp"
#include "tmn/indicators.hpp"
#include "tmn/network.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tmn {

/// Uniform sample times t_start = t_0 < ... < t_{n-1} = t_end.
class TimeGrid
{
public:
	/// Throws InvalidGrid unless t_start < t_end and n_steps >= 2.
	TimeGrid(double t_start, double t_end, std::size_t n_steps);

	double start() const noexcept { return start_; }
	double end() const noexcept { return end_; }
	std::size_t size() const noexcept { return n_; }
	double step() const noexcept { return (end_ - start_) / static_cast<double>(n_ - 1); }

	/// Exact at both ends; interior times avoid accumulated round-off.
	double time(std::size_t i) const;
	std::vector<double> times() const;

	friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
	double start_;
	double end_;
	std::size_t n_;
};

/// Grid from the spec's time window, or [0, 2] with `default_steps` samples.
TimeGrid grid_for(const NetworkSpec& spec, std::size_t default_steps = 2001);

struct TrajectoryPoint
{
	double t = 0.0;
	IndicatorReport report;
};

/// One report per grid sample. Samples are independent; the parallel kernel
/// returns the same sequence as the serial one.
std::vector<TrajectoryPoint> indicator_trajectory(const NetworkSpec& spec,
                                                  const TimeGrid& grid,
                                                  const ReportOptions& opts = {},
                                                  Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Topology changes

struct ArcRef
{
	std::size_t tail = 0;
	std::size_t head = 0;
	friend bool operator==(const ArcRef&, const ArcRef&) = default;
	friend auto operator<=>(const ArcRef&, const ArcRef&) = default;
};

struct TopologyChange
{
	double t = 0.0;
	std::vector<ArcRef> vanished; // flow reaches zero at t
	std::vector<ArcRef> appeared; // flow leaves zero at t
	/// Arc set is the same just before and just after t; the listed arcs only
	/// touch zero at the instant.
	bool touching = false;
};

struct TopologySegment
{
	double begin = 0.0;
	double end = 0.0;
	std::vector<ArcRef> arcs; // arc set on the open interval (begin, end)
};

struct TopologyTimeline
{
	std::vector<TopologyChange> changes;
	std::vector<TopologySegment> segments;
};

struct TopologyOptions
{
	double eps_flow = kDefaultEpsFlow;
	double refine_tol = 1e-9;
};

/**
 * Samples the arc set on the grid, refines every change between neighbouring
 * samples by bisection, and searches sampled local minima of each flow for
 * zeros the grid steps over. Instants within a few refine_tol of each other
 * are merged.
 */
TopologyTimeline detect_topology_changes(const NetworkSpec& spec,
                                         const TimeGrid& grid,
                                         const TopologyOptions& opts = {});

// ---------------------------------------------------------------------------
// Mass balance

struct BalanceCheck
{
	std::vector<double> times;
	/// residuals[i][k]: accumulation-depletion of vertex k averaged over the
	/// sample's difference window, minus the finite-difference stock slope.
	std::vector<std::vector<double>> residuals;
	double tol = 0.0;
	double max_residual = 0.0;
	std::size_t worst_vertex = 0;
	double worst_time = 0.0;
	bool consistent = true;
};

/**
 * Checks dm_k/dt = θ_A[k] on the grid. The stock slope is a central
 * difference (one-sided at the ends) and θ_A is averaged over the same
 * window with composite Simpson quadrature, so the check is exact for
 * trajectories that satisfy the integrated balance even where flows have
 * kinks.
 */
BalanceCheck verify_mass_balance(const NetworkSpec& spec, const TimeGrid& grid, double tol);

struct NegativeStock
{
	std::size_t vertex = 0;
	double t = 0.0;
	double value = 0.0;
};

struct BalanceResult
{
	TimeGrid grid;
	/// stocks[i][k] = m_k(t_i).
	std::vector<std::vector<double>> stocks;
	/// Integrated-balance residuals of the trajectory (see verify_mass_balance).
	std::vector<std::vector<double>> residuals;
	/// m_net(t_i) = θ_S(t_i).
	std::vector<double> total_mass;
	// Closed networks only.
	double inflow = 0.0;
	double outflow = 0.0;
	/// First sample of each vertex that dropped below -tol.
	std::vector<NegativeStock> negative_stocks;

	bool nonphysical() const noexcept { return !negative_stocks.empty(); }
};

/**
 * Integrates dm_k/dt = Σ_i γ_{i,k} - Σ_j γ_{k,j} with classical RK4 on the
 * grid from m(t_start) = m0. Negative stocks are flagged, never clamped.
 */
BalanceResult impose_mass_balance(const NetworkSpec& spec,
                                  const std::vector<double>& m0,
                                  const TimeGrid& grid,
                                  double negative_tol = 1e-9);

/// `spec` with stocks replaced by the integrated trajectories (Γ^mc).
NetworkSpec corrected_network(const NetworkSpec& spec, const BalanceResult& result);

/// Indicator trajectory of the corrected network. Only θ_S and θ_D differ
/// from the uncorrected trajectory. Throws GridMismatch.
std::vector<TrajectoryPoint> corrected_indicator_trajectory(const BalanceResult& result,
                                                            const NetworkSpec& spec,
                                                            const TimeGrid& grid,
                                                            const ReportOptions& opts = {},
                                                            Execution exec = Execution::Parallel);

/// Net inflow of each vertex at time t from the raw flow entries.
std::vector<double> accumulation_rates(const NetworkSpec& spec, double t);

} // namespace tmn
