// Serial reference vs OpenMP kernel for the three parallel workloads.
// Argument 0 selects the serial path, 1 the parallel one.

#include "tmn/cycles.hpp"
#include "tmn/digraph.hpp"
#include "tmn/expr.hpp"
#include "tmn/dynamics.hpp"
#include "tmn/network.hpp"
#include "tmn/stochastic.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using tmn::Execution;

Execution mode(const benchmark::State& state)
{
	return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

tmn::NetworkSpec example1()
{
	using tmn::Constant;
	tmn::NetworkSpec spec;
	spec.n_v = 4;
	for (double m : {10.0, 20.0, 15.0, 5.0})
		spec.stocks.push_back({Constant{m}, {}});
	spec.flows.push_back({0, 1, tmn::parse_expression("abs(sin(pi*t))"), {}});
	spec.flows.push_back({0, 2, tmn::parse_expression("abs(cos(pi*t))"), {}});
	spec.flows.push_back({1, 2, Constant{4}, {}});
	spec.flows.push_back({2, 3, Constant{7}, {}});
	spec.flows.push_back({3, 0, Constant{1.3}, {}});
	spec.time = tmn::TimeWindow{0, 2, 2001};
	return spec;
}

/// Complete digraph on n vertices with unequal weights.
tmn::MassFlowMatrix complete(std::size_t n)
{
	std::vector<std::vector<double>> g(n, std::vector<double>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			g[i][j] = 1.0 + static_cast<double>((i * 7 + j * 3) % 11);
	return tmn::validate_matrix(g);
}

void trajectory(benchmark::State& state)
{
	const auto spec = example1();
	const tmn::TimeGrid grid(0, 2, 20001);
	for (auto _ : state)
		benchmark::DoNotOptimize(tmn::indicator_trajectory(spec, grid, {}, mode(state)));
	state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void stochastic(benchmark::State& state)
{
	auto spec = example1();
	spec.flows[2].entry = tmn::DistributionSpec::make(tmn::DistributionKind::Uniform, {3, 5});
	spec.stocks[3].entry = tmn::DistributionSpec::make(tmn::DistributionKind::LogNormal, {1.5, 0.2});
	const std::size_t n_s = 100000;
	for (auto _ : state)
		benchmark::DoNotOptimize(tmn::stochastic_indicators(spec, n_s, 42, 0.25, {}, mode(state)));
	state.SetItemsProcessed(state.iterations() * static_cast<long>(n_s));
}

void cycles(benchmark::State& state)
{
	const auto d = tmn::build_digraph(complete(8));
	for (auto _ : state)
		benchmark::DoNotOptimize(tmn::enumerate_cycles(d, tmn::kDefaultMaxCycles, mode(state)));
}

} // namespace

BENCHMARK(trajectory)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(stochastic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(cycles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
