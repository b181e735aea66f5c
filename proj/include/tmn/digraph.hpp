#pragma once

#include "tmn/matrix.hpp"

#include <cstddef>
#include <optional>
#include <ranges>
#include <vector>

namespace tmn {

struct Arc
{
	std::size_t tail = 0;
	std::size_t head = 0;
	double weight = 0.0;

	friend bool operator==(const Arc&, const Arc&) = default;
};

/**
 * Weighted mass-flow digraph. Arcs are stored in row-major (tail, head)
 * order and never include self-loops; stocks live on the matrix only.
 */
class MassFlowDigraph
{
public:
	/// Throws InvalidSpec for self-loops, duplicate arcs, out-of-range
	/// vertices and non-positive weights.
	MassFlowDigraph(std::size_t n_vertices, std::vector<Arc> arcs);

	std::size_t vertex_count() const noexcept { return n_; }
	std::size_t arc_count() const noexcept { return arcs_.size(); }
	const std::vector<Arc>& arcs() const noexcept { return arcs_; }
	const Arc& arc(std::size_t id) const { return arcs_[id]; }

	/// Ids of arcs leaving `v`, sorted by head.
	std::ranges::iota_view<std::size_t, std::size_t> out_arcs(std::size_t v) const;
	std::optional<std::size_t> find_arc(std::size_t tail, std::size_t head) const;

	std::size_t in_degree(std::size_t v) const { return in_deg_[v]; }
	std::size_t out_degree(std::size_t v) const { return out_offsets_[v + 1] - out_offsets_[v]; }

private:
	std::size_t n_;
	std::vector<Arc> arcs_;
	std::vector<std::size_t> out_offsets_;
	std::vector<std::size_t> in_deg_;
};

/// Arc (i, j) exists iff i != j and gamma(i, j) > eps_flow.
MassFlowDigraph build_digraph(const MassFlowMatrix& gamma, double eps_flow = kDefaultEpsFlow);

} // namespace tmn
