#include "tmn/dynamics.hpp"

#include "tmn/error.hpp"

#include <cmath>
#include <exception>

namespace tmn {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_steps)
	: start_(t_start)
	, end_(t_end)
	, n_(n_steps)
{
	if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end))
		throw Error(Errc::InvalidGrid, "time grid needs finite t_start < t_end");
	if (n_steps < 2)
		throw Error(Errc::InvalidGrid, "time grid needs at least 2 samples");
}

double TimeGrid::time(std::size_t i) const
{
	if (i + 1 >= n_)
		return end_;
	return start_ + (end_ - start_) * static_cast<double>(i) / static_cast<double>(n_ - 1);
}

std::vector<double> TimeGrid::times() const
{
	std::vector<double> out(n_);
	for (std::size_t i = 0; i < n_; ++i)
		out[i] = time(i);
	return out;
}

TimeGrid grid_for(const NetworkSpec& spec, std::size_t default_steps)
{
	if (spec.time)
		return TimeGrid(spec.time->start, spec.time->end, spec.time->steps);
	return TimeGrid(0.0, 2.0, default_steps);
}

std::vector<TrajectoryPoint> indicator_trajectory(const NetworkSpec& spec,
                                                  const TimeGrid& grid,
                                                  const ReportOptions& opts,
                                                  Execution exec)
{
	const std::size_t n = grid.size();
	std::vector<TrajectoryPoint> out(n);
	auto sample = [&](std::size_t i) {
		const double t = grid.time(i);
		out[i] = {t, compute_report(network_to_matrix(spec, t), opts)};
	};

	if (exec == Execution::Serial) {
		for (std::size_t i = 0; i < n; ++i)
			sample(i);
		return out;
	}

	std::vector<std::exception_ptr> errors(n);
	const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
	for (std::ptrdiff_t i = 0; i < count; ++i) {
		try {
			sample(static_cast<std::size_t>(i));
		} catch (...) {
			errors[static_cast<std::size_t>(i)] = std::current_exception();
		}
	}
	// Report the error of the earliest failing sample, as the serial loop would.
	for (const auto& e : errors)
		if (e)
			std::rethrow_exception(e);
	return out;
}

std::vector<double> accumulation_rates(const NetworkSpec& spec, double t)
{
	std::vector<double> rates(spec.n_v, 0.0);
	for (const auto& f : spec.flows) {
		const double v = evaluate_entry(f.entry, t);
		rates[f.to] += v;
		rates[f.from] -= v;
	}
	return rates;
}

NetworkSpec corrected_network(const NetworkSpec& spec, const BalanceResult& result)
{
	if (result.stocks.size() != result.grid.size() ||
	    (!result.stocks.empty() && result.stocks.front().size() != spec.n_v))
		throw Error(Errc::GridMismatch, "balance result does not match the network");
	NetworkSpec out = spec;
	const auto times = result.grid.times();
	for (std::size_t k = 0; k < spec.n_v; ++k) {
		TabulatedSeries series;
		series.t = times;
		series.values.resize(times.size());
		for (std::size_t i = 0; i < times.size(); ++i)
			series.values[i] = result.stocks[i][k];
		series.integrated = true;
		out.stocks[k].entry = std::move(series);
	}
	out.time = TimeWindow{result.grid.start(), result.grid.end(), result.grid.size()};
	return out;
}

std::vector<TrajectoryPoint> corrected_indicator_trajectory(const BalanceResult& result,
                                                            const NetworkSpec& spec,
                                                            const TimeGrid& grid,
                                                            const ReportOptions& opts,
                                                            Execution exec)
{
	if (!(result.grid == grid))
		throw Error(Errc::GridMismatch, "balance result was integrated on a different grid");
	return indicator_trajectory(corrected_network(spec, result), grid, opts, exec);
}

} // namespace tmn
