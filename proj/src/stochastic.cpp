#include "tmn/stochastic.hpp"

#include "tmn/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

namespace tmn {

namespace {

constexpr std::size_t kBlockSize = 1024;

/// Every entry is either a fixed value or a non-degenerate distribution.
struct SamplingPlan
{
	std::size_t n = 0;
	std::vector<double> fixed;                     // by entry index
	std::vector<const DistributionSpec*> random;   // null for fixed entries
	std::vector<std::size_t> cell;                 // row-major matrix position

	bool is_random(std::size_t e) const { return random[e] != nullptr; }
};

double resolve_time(const NetworkSpec& spec, std::optional<double> t)
{
	if (!t) {
		if (!is_time_invariant(spec))
			throw Error(Errc::ExpressionNeedsTime, "time-dependent entries need an evaluation time");
		return spec.time ? spec.time->start : 0.0;
	}
	if (spec.time && (*t < spec.time->start || *t > spec.time->end)) {
		std::ostringstream os;
		os.precision(17);
		os << "t = " << *t << " outside the time window [" << spec.time->start << ", " << spec.time->end << "]";
		throw Error(Errc::TimeOutsideWindow, os.str());
	}
	return *t;
}

SamplingPlan make_plan(const NetworkSpec& spec, std::optional<double> t)
{
	validate(spec);
	const double te = resolve_time(spec, t);
	SamplingPlan plan;
	plan.n = spec.n_v;
	const std::size_t count = spec.compartment_count();
	plan.fixed.assign(count, 0.0);
	plan.random.assign(count, nullptr);
	plan.cell.resize(count);

	auto add = [&](std::size_t e, const EntrySpec& entry, std::size_t cell) {
		plan.cell[e] = cell;
		if (const auto* d = std::get_if<DistributionSpec>(&entry)) {
			if (d->degenerate())
				plan.fixed[e] = d->degenerate_value();
			else
				plan.random[e] = d;
		} else {
			plan.fixed[e] = evaluate_entry(entry, te);
		}
	};
	for (std::size_t k = 0; k < spec.n_v; ++k)
		add(k, spec.stocks[k].entry, k * spec.n_v + k);
	for (std::size_t f = 0; f < spec.flows.size(); ++f)
		add(spec.n_v + f, spec.flows[f].entry, spec.flows[f].from * spec.n_v + spec.flows[f].to);
	return plan;
}

MassFlowMatrix draw(const SamplingPlan& plan, std::uint64_t seed, std::uint64_t sample)
{
	std::vector<double> dense(plan.n * plan.n, 0.0);
	for (std::size_t e = 0; e < plan.fixed.size(); ++e) {
		dense[plan.cell[e]] = plan.is_random(e) ? plan.random[e]->quantile(philox_uniform(seed, sample, e))
		                                        : plan.fixed[e];
	}
	return MassFlowMatrix::from_dense(plan.n, std::move(dense));
}

/// Running mean and sum of squared deviations.
struct Moments
{
	std::size_t n = 0;
	double mean = 0.0;
	double m2 = 0.0;
	std::size_t undefined = 0;

	void add(std::optional<double> x)
	{
		if (!x) {
			++undefined;
			return;
		}
		++n;
		const double d = *x - mean;
		mean += d / static_cast<double>(n);
		m2 += d * (*x - mean);
	}

	void merge(const Moments& o)
	{
		undefined += o.undefined;
		if (o.n == 0)
			return;
		if (n == 0) {
			n = o.n;
			mean = o.mean;
			m2 = o.m2;
			return;
		}
		const double na = static_cast<double>(n);
		const double nb = static_cast<double>(o.n);
		const double d = o.mean - mean;
		const double total = na + nb;
		mean += d * nb / total;
		m2 += o.m2 + d * d * na * nb / total;
		n += o.n;
	}

	EnsembleStat stat() const
	{
		EnsembleStat s;
		s.defined = n;
		s.undefined = undefined;
		if (n > 0) {
			s.mean = mean;
			s.std = std::sqrt(std::max(m2, 0.0) / static_cast<double>(n));
		}
		return s;
	}
};

struct BlockResult
{
	std::vector<double> entry_sums;
	std::vector<Moments> scalars;
	std::vector<Moments> theta_a;
};

BlockResult run_block(const SamplingPlan& plan,
                      std::uint64_t seed,
                      std::size_t begin,
                      std::size_t end,
                      const ReportOptions* opts)
{
	BlockResult r;
	r.entry_sums.assign(plan.fixed.size(), 0.0);
	if (opts) {
		r.scalars.resize(scalar_indicator_names().size());
		r.theta_a.resize(plan.n);
	}
	for (std::size_t s = begin; s < end; ++s) {
		const MassFlowMatrix gamma = draw(plan, seed, s);
		for (std::size_t e = 0; e < plan.fixed.size(); ++e)
			if (plan.is_random(e))
				r.entry_sums[e] += gamma.entries()[plan.cell[e]];
		if (!opts)
			continue;
		const IndicatorReport rep = compute_report(gamma, *opts);
		for (std::size_t i = 0; i < r.scalars.size(); ++i)
			r.scalars[i].add(scalar_indicator(rep, i));
		for (std::size_t k = 0; k < plan.n; ++k)
			r.theta_a[k].add(rep.theta_a[k]);
	}
	return r;
}

std::vector<BlockResult> run_blocks(const SamplingPlan& plan,
                                    std::size_t n_s,
                                    std::uint64_t seed,
                                    const ReportOptions* opts,
                                    Execution exec)
{
	if (n_s == 0)
		throw Error(Errc::InvalidSpec, "sample count must be at least 1");
	const std::size_t blocks = (n_s + kBlockSize - 1) / kBlockSize;
	std::vector<BlockResult> out(blocks);
	auto one = [&](std::size_t b) {
		out[b] = run_block(plan, seed, b * kBlockSize, std::min(n_s, (b + 1) * kBlockSize), opts);
	};
	if (exec == Execution::Serial) {
		for (std::size_t b = 0; b < blocks; ++b)
			one(b);
		return out;
	}
	std::vector<std::exception_ptr> errors(blocks);
	const auto count = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
	for (std::ptrdiff_t b = 0; b < count; ++b) {
		try {
			one(static_cast<std::size_t>(b));
		} catch (...) {
			errors[static_cast<std::size_t>(b)] = std::current_exception();
		}
	}
	for (const auto& e : errors)
		if (e)
			std::rethrow_exception(e);
	return out;
}

MassFlowMatrix mean_matrix(const SamplingPlan& plan, const std::vector<BlockResult>& blocks, std::size_t n_s)
{
	std::vector<double> dense(plan.n * plan.n, 0.0);
	for (std::size_t e = 0; e < plan.fixed.size(); ++e) {
		if (!plan.is_random(e)) {
			dense[plan.cell[e]] = plan.fixed[e];
			continue;
		}
		double sum = 0.0;
		for (const auto& b : blocks)
			sum += b.entry_sums[e];
		dense[plan.cell[e]] = sum / static_cast<double>(n_s);
	}
	return MassFlowMatrix::from_dense(plan.n, std::move(dense));
}

} // namespace

MassFlowMatrix draw_sample(const NetworkSpec& spec, std::uint64_t seed, std::uint64_t sample, std::optional<double> t)
{
	return draw(make_plan(spec, t), seed, sample);
}

MassFlowMatrix sample_mean_matrix(const NetworkSpec& spec,
                                  std::size_t n_s,
                                  std::uint64_t seed,
                                  std::optional<double> t,
                                  Execution exec)
{
	const SamplingPlan plan = make_plan(spec, t);
	return mean_matrix(plan, run_blocks(plan, n_s, seed, nullptr, exec), n_s);
}

StochasticReport stochastic_indicators(const NetworkSpec& spec,
                                       std::size_t n_s,
                                       std::uint64_t seed,
                                       std::optional<double> at_t,
                                       const ReportOptions& opts,
                                       Execution exec)
{
	const SamplingPlan plan = make_plan(spec, at_t);
	const auto blocks = run_blocks(plan, n_s, seed, &opts, exec);

	std::vector<Moments> scalars(scalar_indicator_names().size());
	std::vector<Moments> theta_a(plan.n);
	for (const auto& b : blocks) {
		for (std::size_t i = 0; i < scalars.size(); ++i)
			scalars[i].merge(b.scalars[i]);
		for (std::size_t k = 0; k < plan.n; ++k)
			theta_a[k].merge(b.theta_a[k]);
	}

	StochasticReport out{mean_matrix(plan, blocks, n_s), {}, {}, {}, n_s, seed, at_t};
	out.mean_report = compute_report(out.mean_matrix, opts);
	for (const auto& m : scalars)
		out.ensemble.push_back(m.stat());
	for (const auto& m : theta_a)
		out.ensemble_theta_a.push_back(m.stat());
	return out;
}

} // namespace tmn
