#include "tmn/cycles.hpp"

#include "tmn/error.hpp"

#include <algorithm>
#include <atomic>
#include <omp.h>

namespace tmn {

namespace {

struct ReverseAdjacency
{
	std::vector<std::vector<std::size_t>> preds;

	explicit ReverseAdjacency(const MassFlowDigraph& d)
		: preds(d.vertex_count())
	{
		for (const Arc& a : d.arcs())
			preds[a.head].push_back(a.tail);
	}
};

/// Per-start-vertex search state, reused across start vertices by one thread.
class CircuitSearch
{
public:
	CircuitSearch(const MassFlowDigraph& d, const ReverseAdjacency& rev)
		: d_(d)
		, rev_(rev)
		, in_comp_(d.vertex_count(), 0)
		, fwd_(d.vertex_count(), 0)
		, blocked_(d.vertex_count(), 0)
		, b_lists_(d.vertex_count())
	{
	}

	/// Appends the cycles whose smallest vertex is `s`. Returns false when
	/// `budget` ran out.
	bool run(std::size_t s, std::vector<DirectedCycle>& out, std::atomic<std::size_t>& emitted,
	         std::size_t budget, const std::atomic<bool>& stop)
	{
		if (!strong_component(s))
			return true;

		struct Frame
		{
			std::size_t v;
			std::size_t next;
			std::size_t end;
			bool closed;
		};
		std::vector<Frame> frames;
		std::vector<std::size_t> path_arcs;

		auto push_frame = [&](std::size_t v) {
			const auto ids = d_.out_arcs(v);
			frames.push_back({v, *ids.begin(), *ids.end(), false});
			blocked_[v] = 1;
		};
		push_frame(s);

		while (!frames.empty()) {
			if (stop.load(std::memory_order_relaxed))
				return false;
			Frame& f = frames.back();
			if (f.next < f.end) {
				const std::size_t aid = f.next++;
				const std::size_t w = d_.arc(aid).head;
				if (!in_comp_[w])
					continue;
				if (w == s) {
					if (emitted.fetch_add(1, std::memory_order_relaxed) >= budget)
						return false;
					path_arcs.push_back(aid);
					out.push_back(make_cycle(path_arcs));
					path_arcs.pop_back();
					f.closed = true;
				} else if (!blocked_[w]) {
					path_arcs.push_back(aid);
					push_frame(w);
				}
				continue;
			}
			const std::size_t v = f.v;
			const bool closed = f.closed;
			if (closed) {
				unblock(v);
			} else {
				for (std::size_t aid : d_.out_arcs(v)) {
					const std::size_t w = d_.arc(aid).head;
					if (!in_comp_[w])
						continue;
					auto& list = b_lists_[w];
					if (std::find(list.begin(), list.end(), v) == list.end())
						list.push_back(v);
				}
			}
			frames.pop_back();
			if (!path_arcs.empty())
				path_arcs.pop_back();
			if (!frames.empty() && closed)
				frames.back().closed = true;
		}
		return true;
	}

private:
	/// Marks the strongly connected component of `s` within the subgraph
	/// induced by vertices >= s. Returns false if it is just {s}.
	bool strong_component(std::size_t s)
	{
		const std::size_t n = d_.vertex_count();
		std::fill(in_comp_.begin(), in_comp_.end(), 0);
		std::fill(fwd_.begin(), fwd_.end(), 0);
		std::vector<std::size_t> stack{s};
		fwd_[s] = 1;
		while (!stack.empty()) {
			const std::size_t v = stack.back();
			stack.pop_back();
			for (std::size_t aid : d_.out_arcs(v)) {
				const std::size_t w = d_.arc(aid).head;
				if (w > s && !fwd_[w]) {
					fwd_[w] = 1;
					stack.push_back(w);
				}
			}
		}
		std::size_t size = 1;
		in_comp_[s] = 1;
		stack.push_back(s);
		while (!stack.empty()) {
			const std::size_t v = stack.back();
			stack.pop_back();
			for (std::size_t u : rev_.preds[v]) {
				if (u > s && fwd_[u] && !in_comp_[u]) {
					in_comp_[u] = 1;
					++size;
					stack.push_back(u);
				}
			}
		}
		for (std::size_t v = s; v < n; ++v) {
			if (in_comp_[v]) {
				blocked_[v] = 0;
				b_lists_[v].clear();
			}
		}
		return size > 1;
	}

	void unblock(std::size_t u)
	{
		std::vector<std::size_t> stack{u};
		while (!stack.empty()) {
			const std::size_t v = stack.back();
			stack.pop_back();
			if (!blocked_[v])
				continue;
			blocked_[v] = 0;
			for (std::size_t w : b_lists_[v])
				if (blocked_[w])
					stack.push_back(w);
			b_lists_[v].clear();
		}
	}

	DirectedCycle make_cycle(const std::vector<std::size_t>& arc_ids) const
	{
		DirectedCycle c;
		c.arcs = arc_ids;
		c.vertices.reserve(arc_ids.size() + 1);
		c.flows.reserve(arc_ids.size());
		for (std::size_t aid : arc_ids) {
			c.vertices.push_back(d_.arc(aid).tail);
			c.flows.push_back(d_.arc(aid).weight);
		}
		c.vertices.push_back(d_.arc(arc_ids.front()).tail);
		return c;
	}

	const MassFlowDigraph& d_;
	const ReverseAdjacency& rev_;
	std::vector<char> in_comp_;
	std::vector<char> fwd_;
	std::vector<char> blocked_;
	std::vector<std::vector<std::size_t>> b_lists_;
};

[[noreturn]] void throw_budget(std::size_t max_cycles)
{
	throw Error(Errc::CycleBudgetExceeded,
	            "digraph has more than " + std::to_string(max_cycles) + " directed cycles");
}

} // namespace

void sort_canonical(std::vector<DirectedCycle>& cycles)
{
	std::sort(cycles.begin(), cycles.end(),
	          [](const DirectedCycle& a, const DirectedCycle& b) { return a.vertices < b.vertices; });
}

CycleAnalysis analyze_cycles(const MassFlowDigraph& d, std::vector<DirectedCycle> cycles)
{
	CycleAnalysis out;
	out.arc_cycle_count.assign(d.arc_count(), 0);
	for (const auto& c : cycles)
		for (std::size_t aid : c.arcs)
			++out.arc_cycle_count[aid];
	for (std::size_t aid = 0; aid < d.arc_count(); ++aid) {
		if (out.arc_cycle_count[aid] == 0)
			out.q_arcs.push_back(d.arc(aid));
		else if (out.arc_cycle_count[aid] >= 2)
			out.s_arcs.push_back(d.arc(aid));
	}
	out.cycles = std::move(cycles);
	return out;
}

CycleAnalysis enumerate_cycles(const MassFlowDigraph& d, std::size_t max_cycles, Execution exec)
{
	const std::size_t n = d.vertex_count();
	const ReverseAdjacency rev(d);
	std::atomic<std::size_t> emitted{0};
	std::atomic<bool> stop{false};
	std::vector<DirectedCycle> cycles;

	if (exec == Execution::Serial || n < 2) {
		CircuitSearch search(d, rev);
		for (std::size_t s = 0; s < n; ++s)
			if (!search.run(s, cycles, emitted, max_cycles, stop))
				throw_budget(max_cycles);
	} else {
		std::vector<std::vector<DirectedCycle>> per_start(n);
		const auto ns = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
		{
			CircuitSearch search(d, rev);
#pragma omp for schedule(dynamic, 1)
			for (std::ptrdiff_t s = 0; s < ns; ++s) {
				if (stop.load(std::memory_order_relaxed))
					continue;
				if (!search.run(static_cast<std::size_t>(s), per_start[static_cast<std::size_t>(s)], emitted,
				                max_cycles, stop))
					stop.store(true, std::memory_order_relaxed);
			}
		}
		if (stop.load())
			throw_budget(max_cycles);
		std::size_t total = 0;
		for (const auto& v : per_start)
			total += v.size();
		cycles.reserve(total);
		for (auto& v : per_start)
			std::move(v.begin(), v.end(), std::back_inserter(cycles));
	}
	sort_canonical(cycles);
	return analyze_cycles(d, std::move(cycles));
}

} // namespace tmn
