#pragma once

#include "tmn/digraph.hpp"
#include "tmn/execution.hpp"

#include <cstddef>
#include <vector>

namespace tmn {

inline constexpr std::size_t kDefaultMaxCycles = 1'000'000;

/**
 * Elementary directed cycle. `vertices` holds v_0 ... v_l with v_0 == v_l and
 * v_0 the smallest vertex on the cycle; `arcs[k]` joins vertices[k] to
 * vertices[k + 1] and `flows[k]` is its weight.
 */
struct DirectedCycle
{
	std::vector<std::size_t> vertices;
	std::vector<std::size_t> arcs;
	std::vector<double> flows;

	std::size_t length() const noexcept { return arcs.size(); }

	friend bool operator==(const DirectedCycle&, const DirectedCycle&) = default;
};

struct CycleAnalysis
{
	std::vector<DirectedCycle> cycles;
	/// Arcs on no cycle, in arc-id order.
	std::vector<Arc> q_arcs;
	/// Arcs on two or more cycles, in arc-id order.
	std::vector<Arc> s_arcs;
	/// Number of cycles through each arc, indexed by arc id.
	std::vector<std::size_t> arc_cycle_count;

	std::size_t cycle_count() const noexcept { return cycles.size(); }
};

/**
 * Johnson's elementary-circuit enumeration. Each cycle is reported once,
 * rotated to start at its smallest vertex; the list is sorted
 * lexicographically by vertex sequence. Throws CycleBudgetExceeded when the
 * graph has more than `max_cycles` cycles.
 *
 * The parallel kernel searches start vertices concurrently and yields the
 * same result as the serial one.
 */
CycleAnalysis enumerate_cycles(const MassFlowDigraph& d,
                               std::size_t max_cycles = kDefaultMaxCycles,
                               Execution exec = Execution::Serial);

/// Derives the 𝒬/𝒮 arc sets for an already enumerated cycle list.
CycleAnalysis analyze_cycles(const MassFlowDigraph& d, std::vector<DirectedCycle> cycles);

inline constexpr std::size_t kOracleMaxVertices = 12;

/// Exhaustive simple-path search. Test oracle for small graphs only; throws
/// TooLargeForOracle above kOracleMaxVertices vertices.
std::vector<DirectedCycle> brute_force_cycles(const MassFlowDigraph& d);

/// Sorts cycles lexicographically by vertex sequence.
void sort_canonical(std::vector<DirectedCycle>& cycles);

} // namespace tmn
