#include "tmn/cycles.hpp"

#include "tmn/error.hpp"

namespace tmn {

namespace {

void extend(const MassFlowDigraph& d,
            std::size_t start,
            std::size_t v,
            std::vector<char>& on_path,
            std::vector<std::size_t>& path_arcs,
            std::vector<DirectedCycle>& out)
{
	for (const Arc& a : d.arcs()) {
		if (a.tail != v)
			continue;
		const std::size_t aid = *d.find_arc(a.tail, a.head);
		if (a.head == start) {
			DirectedCycle c;
			c.arcs = path_arcs;
			c.arcs.push_back(aid);
			for (std::size_t id : c.arcs) {
				c.vertices.push_back(d.arc(id).tail);
				c.flows.push_back(d.arc(id).weight);
			}
			c.vertices.push_back(start);
			out.push_back(std::move(c));
		} else if (a.head > start && !on_path[a.head]) {
			on_path[a.head] = 1;
			path_arcs.push_back(aid);
			extend(d, start, a.head, on_path, path_arcs, out);
			path_arcs.pop_back();
			on_path[a.head] = 0;
		}
	}
}

} // namespace

std::vector<DirectedCycle> brute_force_cycles(const MassFlowDigraph& d)
{
	if (d.vertex_count() > kOracleMaxVertices) {
		throw Error(Errc::TooLargeForOracle, "brute-force cycle oracle is limited to " +
		                                         std::to_string(kOracleMaxVertices) + " vertices");
	}
	std::vector<DirectedCycle> out;
	std::vector<char> on_path(d.vertex_count(), 0);
	std::vector<std::size_t> path_arcs;
	for (std::size_t s = 0; s < d.vertex_count(); ++s) {
		on_path[s] = 1;
		extend(d, s, s, on_path, path_arcs, out);
		on_path[s] = 0;
	}
	sort_canonical(out);
	return out;
}

} // namespace tmn
