#include "tmn/indicators.hpp"

#include "tmn/error.hpp"

#include <cmath>

namespace tmn {

namespace {

void require_positive_flows(const DirectedCycle& phi)
{
	if (phi.flows.empty())
		throw Error(Errc::NonPositiveFlow, "cycle has no arcs");
	for (double f : phi.flows)
		if (!(f > 0.0))
			throw Error(Errc::NonPositiveFlow, "cycle flows must be strictly positive");
}

std::optional<double> absolute(double relative, double q_flow, bool any_arc)
{
	if (!any_arc)
		return std::nullopt;
	return relative / (relative + q_flow);
}

} // namespace

double cycle_gm(const DirectedCycle& phi)
{
	require_positive_flows(phi);
	double log_sum = 0.0;
	for (double f : phi.flows)
		log_sum += std::log(f);
	return std::exp(log_sum / static_cast<double>(phi.flows.size()));
}

double cycle_hm(const DirectedCycle& phi)
{
	require_positive_flows(phi);
	double inv_sum = 0.0;
	for (double f : phi.flows)
		inv_sum += 1.0 / f;
	return static_cast<double>(phi.flows.size()) / inv_sum;
}

double cycle_am(const DirectedCycle& phi)
{
	require_positive_flows(phi);
	double sum = 0.0;
	for (double f : phi.flows)
		sum += f;
	return sum / static_cast<double>(phi.flows.size());
}

CycleMeans cycle_means(const DirectedCycle& phi)
{
	return {cycle_gm(phi), cycle_hm(phi), cycle_am(phi)};
}

CycleDependentIndicators cycle_dependent_indicators(const CycleAnalysis& analysis)
{
	CycleDependentIndicators out;
	for (const auto& phi : analysis.cycles) {
		const CycleMeans m = cycle_means(phi);
		out.lambda_gr += m.gm;
		out.lambda_hr += m.hm;
		out.lambda_ar += m.am;
	}
	for (const Arc& a : analysis.q_arcs)
		out.q_flow += a.weight;
	for (const Arc& a : analysis.s_arcs)
		out.lambda_s += a.weight;
	out.lambda_y = analysis.cycles.size();

	const bool any_arc = !analysis.arc_cycle_count.empty();
	out.lambda_ga = absolute(out.lambda_gr, out.q_flow, any_arc);
	out.lambda_ha = absolute(out.lambda_hr, out.q_flow, any_arc);
	out.lambda_aa = absolute(out.lambda_ar, out.q_flow, any_arc);
	return out;
}

CycleIndependentIndicators cycle_independent_indicators(const MassFlowMatrix& gamma, const MassFlowDigraph& d)
{
	if (gamma.size() != d.vertex_count())
		throw Error(Errc::InvalidSpec, "matrix and digraph disagree on the vertex count");
	const std::size_t n = gamma.size();
	CycleIndependentIndicators out;

	std::size_t degree_sum = 0;
	for (std::size_t v = 0; v < n; ++v)
		degree_sum += d.in_degree(v) + d.out_degree(v);
	out.lambda_c = static_cast<double>(degree_sum) / static_cast<double>(n);

	double upper = 0.0;
	double lower = 0.0;
	out.theta_a.assign(n, 0.0);
	for (const Arc& a : d.arcs()) {
		(a.tail < a.head ? upper : lower) += a.weight;
		out.theta_f += a.weight;
		out.theta_a[a.head] += a.weight;
		out.theta_a[a.tail] -= a.weight;
	}
	if (lower > 0.0)
		out.lambda_d = upper / lower;

	for (std::size_t k = 0; k < n; ++k)
		out.theta_s += gamma.stock(k);
	if (n > 1) {
		const double mean = out.theta_s / static_cast<double>(n);
		double ss = 0.0;
		for (std::size_t k = 0; k < n; ++k) {
			const double dev = gamma.stock(k) - mean;
			ss += dev * dev;
		}
		out.theta_d = std::sqrt(ss / static_cast<double>(n - 1));
	}
	return out;
}

IndicatorReport combine(const CycleDependentIndicators& dep, const CycleIndependentIndicators& indep)
{
	IndicatorReport r;
	r.lambda_ga = dep.lambda_ga;
	r.lambda_gr = dep.lambda_gr;
	r.lambda_ha = dep.lambda_ha;
	r.lambda_hr = dep.lambda_hr;
	r.lambda_aa = dep.lambda_aa;
	r.lambda_ar = dep.lambda_ar;
	r.lambda_c = indep.lambda_c;
	r.lambda_y = dep.lambda_y;
	r.lambda_s = dep.lambda_s;
	r.lambda_d = indep.lambda_d;
	r.theta_s = indep.theta_s;
	r.theta_f = indep.theta_f;
	r.theta_d = indep.theta_d;
	r.theta_a = indep.theta_a;
	if (!r.lambda_ga)
		r.flags.emplace_back("lambda_ga");
	if (!r.lambda_ha)
		r.flags.emplace_back("lambda_ha");
	if (!r.lambda_aa)
		r.flags.emplace_back("lambda_aa");
	if (!r.lambda_d)
		r.flags.emplace_back("lambda_d");
	if (!r.theta_d)
		r.flags.emplace_back("theta_d");
	return r;
}

IndicatorReport compute_report(const MassFlowMatrix& gamma, const ReportOptions& opts)
{
	const MassFlowDigraph d = build_digraph(gamma, opts.eps_flow);
	const CycleAnalysis analysis = enumerate_cycles(d, opts.max_cycles);
	return combine(cycle_dependent_indicators(analysis), cycle_independent_indicators(gamma, d));
}

const std::vector<std::string>& scalar_indicator_names()
{
	static const std::vector<std::string> names = {
		"lambda_ga", "lambda_gr", "lambda_ha", "lambda_hr", "lambda_aa", "lambda_ar", "lambda_c",
		"lambda_y",  "lambda_s",  "lambda_d",  "theta_s",   "theta_f",   "theta_d",
	};
	return names;
}

std::optional<double> scalar_indicator(const IndicatorReport& r, std::size_t index)
{
	switch (index) {
	case 0: return r.lambda_ga;
	case 1: return r.lambda_gr;
	case 2: return r.lambda_ha;
	case 3: return r.lambda_hr;
	case 4: return r.lambda_aa;
	case 5: return r.lambda_ar;
	case 6: return r.lambda_c;
	case 7: return static_cast<double>(r.lambda_y);
	case 8: return r.lambda_s;
	case 9: return r.lambda_d;
	case 10: return r.theta_s;
	case 11: return r.theta_f;
	case 12: return r.theta_d;
	default: throw Error(Errc::InvalidSpec, "indicator index out of range");
	}
}

} // namespace tmn
