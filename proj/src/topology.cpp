#include "tmn/dynamics.hpp"

#include "tmn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tmn {

namespace {

struct Event
{
	double t;
	std::size_t flow;
	bool appears;
};

class FlowProbe
{
public:
	FlowProbe(const NetworkSpec& spec, double eps)
		: spec_(spec)
		, eps_(eps)
	{
	}

	double value(std::size_t f, double t) const { return evaluate_entry(spec_.flows[f].entry, t); }
	bool present(std::size_t f, double t) const { return value(f, t) > eps_; }
	double eps() const { return eps_; }

	/// Boundary between `lo` (presence state `lo_state`) and `hi` (the other state).
	double bisect(std::size_t f, double lo, double hi, bool lo_state, double tol) const
	{
		while (hi - lo > tol) {
			const double mid = 0.5 * (lo + hi);
			if (mid <= lo || mid >= hi)
				break;
			if (present(f, mid) == lo_state)
				lo = mid;
			else
				hi = mid;
		}
		return 0.5 * (lo + hi);
	}

	/// Golden-section minimum of flow f on [a, b], refined to round-off so
	/// that V-shaped zeros such as |cos(pi t)| are resolved below eps_flow.
	double argmin(std::size_t f, double a, double b) const
	{
		const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
		double c = b - inv_phi * (b - a);
		double d = a + inv_phi * (b - a);
		double fc = value(f, c);
		double fd = value(f, d);
		const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::fabs(a), std::fabs(b)});
		for (int it = 0; it < 300 && (b - a) > floor; ++it) {
			if (fc <= fd) {
				b = d;
				d = c;
				fd = fc;
				c = b - inv_phi * (b - a);
				fc = value(f, c);
			} else {
				a = c;
				c = d;
				fc = fd;
				d = a + inv_phi * (b - a);
				fd = value(f, d);
			}
		}
		return fc <= fd ? c : d;
	}

private:
	const NetworkSpec& spec_;
	double eps_;
};

std::vector<ArcRef> arcs_at(const NetworkSpec& spec, const FlowProbe& probe, double t)
{
	std::vector<ArcRef> out;
	for (std::size_t f = 0; f < spec.flows.size(); ++f)
		if (probe.present(f, t))
			out.push_back({spec.flows[f].from, spec.flows[f].to});
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace

TopologyTimeline detect_topology_changes(const NetworkSpec& spec, const TimeGrid& grid, const TopologyOptions& opts)
{
	if (has_distributions(spec))
		throw Error(Errc::DistributionEntryPresent, "topology detection needs deterministic entries");
	const FlowProbe probe(spec, opts.eps_flow);
	const std::size_t n = grid.size();
	const std::size_t nf = spec.flows.size();
	const auto times = grid.times();

	std::vector<std::vector<double>> values(n, std::vector<double>(nf));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t f = 0; f < nf; ++f)
			values[i][f] = probe.value(f, times[i]);
	auto on = [&](std::size_t i, std::size_t f) { return values[i][f] > opts.eps_flow; };

	std::vector<Event> events;
	for (std::size_t i = 0; i + 1 < n; ++i) {
		for (std::size_t f = 0; f < nf; ++f) {
			if (on(i, f) == on(i + 1, f))
				continue;
			const double t = probe.bisect(f, times[i], times[i + 1], on(i, f), opts.refine_tol);
			events.push_back({t, f, on(i + 1, f)});
		}
	}

	// Zeros between samples: a sampled local minimum of a flow that stays
	// present on all three samples may still touch zero in between.
	for (std::size_t i = 1; i + 1 < n; ++i) {
		for (std::size_t f = 0; f < nf; ++f) {
			if (!on(i - 1, f) || !on(i, f) || !on(i + 1, f))
				continue;
			const double l = values[i - 1][f], c = values[i][f], r = values[i + 1][f];
			if (!(c <= l && c <= r && (c < l || c < r)))
				continue;
			const double tm = probe.argmin(f, times[i - 1], times[i + 1]);
			if (probe.present(f, tm))
				continue;
			events.push_back({probe.bisect(f, times[i - 1], tm, true, opts.refine_tol), f, false});
			events.push_back({probe.bisect(f, tm, times[i + 1], false, opts.refine_tol), f, true});
		}
	}

	std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
		return a.t != b.t ? a.t < b.t : a.flow < b.flow;
	});

	TopologyTimeline out;
	const double merge = 4.0 * opts.refine_tol;
	for (std::size_t a = 0; a < events.size();) {
		std::size_t b = a + 1;
		while (b < events.size() && events[b].t - events[b - 1].t <= merge)
			++b;
		const double lo = events[a].t;
		const double hi = events[b - 1].t;

		TopologyChange change;
		double t = 0.0;
		for (std::size_t k = a; k < b; ++k)
			t += events[k].t;
		t /= static_cast<double>(b - a);
		// Prefer a grid sample or window end lying inside the merged cluster.
		for (double s : times) {
			if (s >= lo - opts.refine_tol && s <= hi + opts.refine_tol) {
				t = s;
				break;
			}
		}
		change.t = t;

		std::vector<int> net(nf, 0);
		for (std::size_t k = a; k < b; ++k) {
			const auto& ev = events[k];
			const ArcRef arc{spec.flows[ev.flow].from, spec.flows[ev.flow].to};
			(ev.appears ? change.appeared : change.vanished).push_back(arc);
			net[ev.flow] += ev.appears ? 1 : -1;
		}
		std::sort(change.vanished.begin(), change.vanished.end());
		change.vanished.erase(std::unique(change.vanished.begin(), change.vanished.end()), change.vanished.end());
		std::sort(change.appeared.begin(), change.appeared.end());
		change.appeared.erase(std::unique(change.appeared.begin(), change.appeared.end()), change.appeared.end());
		change.touching = std::all_of(net.begin(), net.end(), [](int x) { return x == 0; });
		out.changes.push_back(std::move(change));
		a = b;
	}

	std::vector<double> bounds{grid.start()};
	for (const auto& c : out.changes)
		if (c.t > bounds.back() && c.t < grid.end())
			bounds.push_back(c.t);
	bounds.push_back(grid.end());
	for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
		const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
		out.segments.push_back({bounds[k], bounds[k + 1], arcs_at(spec, probe, mid)});
	}
	return out;
}

} // namespace tmn
