#pragma once

#include "tmn/execution.hpp"
#include "tmn/indicators.hpp"
#include "tmn/network.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tmn {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Uniform in the open interval (0, 1) for the stream position
/// (seed, sample, entry). Independent of evaluation order.
double philox_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t entry);

/**
 * Draw number `sample` of the random matrix. Entry index k < n_v is stock k,
 * entry n_v + f is flow f. Distribution entries are drawn by inverse CDF;
 * deterministic entries are evaluated at `t`, which is required when the
 * spec is time-dependent (ExpressionNeedsTime).
 */
MassFlowMatrix draw_sample(const NetworkSpec& spec, std::uint64_t seed, std::uint64_t sample, std::optional<double> t = {});

/// Entrywise mean of draws 0..n_s-1. Entries that are not random keep their exact value.
MassFlowMatrix sample_mean_matrix(const NetworkSpec& spec,
                                  std::size_t n_s,
                                  std::uint64_t seed,
                                  std::optional<double> t = {},
                                  Execution exec = Execution::Parallel);

/// Distribution of one indicator over the per-sample reports.
struct EnsembleStat
{
	std::optional<double> mean; // over samples where the indicator is defined
	double std = 0.0;           // population standard deviation
	std::size_t defined = 0;
	std::size_t undefined = 0;

	friend bool operator==(const EnsembleStat&, const EnsembleStat&) = default;
};

struct StochasticReport
{
	MassFlowMatrix mean_matrix;
	/// Indicators of the mean matrix.
	IndicatorReport mean_report;
	/// Indexed like scalar_indicator_names().
	std::vector<EnsembleStat> ensemble;
	std::vector<EnsembleStat> ensemble_theta_a;
	std::size_t n_s = 0;
	std::uint64_t seed = 0;
	std::optional<double> t;

	friend bool operator==(const StochasticReport&, const StochasticReport&) = default;
};

/// Samples are reduced in fixed-size blocks in sample order, so the result is
/// bit-identical for every thread count and for both execution modes.
StochasticReport stochastic_indicators(const NetworkSpec& spec,
                                       std::size_t n_s,
                                       std::uint64_t seed,
                                       std::optional<double> at_t = {},
                                       const ReportOptions& opts = {},
                                       Execution exec = Execution::Parallel);

} // namespace tmn
