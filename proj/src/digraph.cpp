#include "tmn/digraph.hpp"

#include "tmn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tmn {

MassFlowDigraph::MassFlowDigraph(std::size_t n_vertices, std::vector<Arc> arcs)
	: n_(n_vertices)
	, arcs_(std::move(arcs))
	, out_offsets_(n_vertices + 1, 0)
	, in_deg_(n_vertices, 0)
{
	std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
		return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
	});
	for (std::size_t k = 0; k < arcs_.size(); ++k) {
		const Arc& a = arcs_[k];
		if (a.tail >= n_ || a.head >= n_)
			throw Error(Errc::InvalidSpec, "arc references a missing vertex");
		if (a.tail == a.head)
			throw Error(Errc::InvalidSpec, "self-loops are stocks, not arcs");
		if (!(a.weight > 0.0) || !std::isfinite(a.weight))
			throw Error(Errc::InvalidSpec, "arc weights must be positive and finite");
		if (k > 0 && arcs_[k - 1].tail == a.tail && arcs_[k - 1].head == a.head)
			throw Error(Errc::InvalidSpec, "duplicate arc");
		++out_offsets_[a.tail + 1];
		++in_deg_[a.head];
	}
	std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
}

std::ranges::iota_view<std::size_t, std::size_t> MassFlowDigraph::out_arcs(std::size_t v) const
{
	// Arcs are sorted by tail, so the ids of v's out-arcs are contiguous.
	return {out_offsets_[v], out_offsets_[v + 1]};
}

std::optional<std::size_t> MassFlowDigraph::find_arc(std::size_t tail, std::size_t head) const
{
	if (tail >= n_)
		return std::nullopt;
	const auto first = arcs_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[tail]);
	const auto last = arcs_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[tail + 1]);
	const auto it = std::lower_bound(first, last, head, [](const Arc& a, std::size_t h) { return a.head < h; });
	if (it == last || it->head != head)
		return std::nullopt;
	return static_cast<std::size_t>(it - arcs_.begin());
}

MassFlowDigraph build_digraph(const MassFlowMatrix& gamma, double eps_flow)
{
	std::vector<Arc> arcs;
	const std::size_t n = gamma.size();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if (i != j && gamma(i, j) > eps_flow)
				arcs.push_back({i, j, gamma(i, j)});
	return MassFlowDigraph(n, std::move(arcs));
}

} // namespace tmn
