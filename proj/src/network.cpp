#include "tmn/network.hpp"

#include "tmn/error.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <sstream>

namespace tmn {

namespace {

std::string vertex_pair(std::size_t from, std::size_t to)
{
	std::ostringstream os;
	os << "(" << from + 1 << ", " << to + 1 << ")";
	return os.str();
}

void require_finite(const std::vector<double>& params)
{
	for (double p : params)
		if (!std::isfinite(p))
			throw Error(Errc::InvalidDistribution, "distribution parameters must be finite");
}

void validate_entry(const EntrySpec& entry, const std::string& where)
{
	if (const auto* c = std::get_if<Constant>(&entry)) {
		if (!std::isfinite(c->value) || c->value < 0.0)
			throw Error(Errc::InvalidSpec, where + ": constant must be finite and >= 0");
	} else if (const auto* d = std::get_if<DistributionSpec>(&entry)) {
		(void)DistributionSpec::make(d->kind, d->params);
	} else if (const auto* tab = std::get_if<TabulatedSeries>(&entry)) {
		if (tab->t.empty() || tab->t.size() != tab->values.size())
			throw Error(Errc::InvalidSpec, where + ": table needs matching, nonempty t and value arrays");
		for (std::size_t i = 0; i < tab->t.size(); ++i) {
			if (!std::isfinite(tab->t[i]) || !std::isfinite(tab->values[i]))
				throw Error(Errc::InvalidSpec, where + ": table entries must be finite");
			if (i > 0 && !(tab->t[i] > tab->t[i - 1]))
				throw Error(Errc::InvalidSpec, where + ": table times must be strictly increasing");
		}
	}
}

} // namespace

std::string_view to_string(DistributionKind kind) noexcept
{
	switch (kind) {
	case DistributionKind::Constant: return "constant";
	case DistributionKind::Uniform: return "uniform";
	case DistributionKind::TruncatedNormal: return "truncated_normal";
	case DistributionKind::LogNormal: return "lognormal";
	}
	return "unknown";
}

DistributionKind distribution_kind_from_string(std::string_view name)
{
	for (auto k : {DistributionKind::Constant, DistributionKind::Uniform,
	               DistributionKind::TruncatedNormal, DistributionKind::LogNormal})
		if (to_string(k) == name)
			return k;
	throw Error(Errc::UnsupportedDistribution, "unsupported distribution '" + std::string(name) + "'");
}

DistributionSpec DistributionSpec::make(DistributionKind kind, std::vector<double> params)
{
	require_finite(params);
	auto arity = [&](std::size_t n) {
		if (params.size() != n) {
			std::ostringstream os;
			os << to_string(kind) << " takes " << n << " parameter(s), got " << params.size();
			throw Error(Errc::InvalidDistribution, os.str());
		}
	};
	switch (kind) {
	case DistributionKind::Constant:
		arity(1);
		if (params[0] < 0.0)
			throw Error(Errc::InvalidDistribution, "constant distribution value must be >= 0");
		break;
	case DistributionKind::Uniform:
		arity(2);
		if (!(0.0 <= params[0] && params[0] <= params[1]))
			throw Error(Errc::InvalidDistribution, "uniform(a, b) requires 0 <= a <= b");
		break;
	case DistributionKind::TruncatedNormal:
		arity(2);
		if (params[1] < 0.0)
			throw Error(Errc::InvalidDistribution, "truncated_normal sigma must be >= 0");
		if (params[1] == 0.0 && params[0] < 0.0)
			throw Error(Errc::InvalidDistribution, "degenerate truncated_normal needs mean >= 0");
		break;
	case DistributionKind::LogNormal:
		arity(2);
		if (params[1] < 0.0)
			throw Error(Errc::InvalidDistribution, "lognormal sigma_log must be >= 0");
		break;
	}
	return DistributionSpec{kind, std::move(params)};
}

bool DistributionSpec::degenerate() const
{
	switch (kind) {
	case DistributionKind::Constant: return true;
	case DistributionKind::Uniform: return params[0] == params[1];
	case DistributionKind::TruncatedNormal:
	case DistributionKind::LogNormal: return params[1] == 0.0;
	}
	return false;
}

double DistributionSpec::degenerate_value() const
{
	switch (kind) {
	case DistributionKind::Constant:
	case DistributionKind::Uniform:
	case DistributionKind::TruncatedNormal: return params[0];
	case DistributionKind::LogNormal: return std::exp(params[0]);
	}
	return 0.0;
}

double DistributionSpec::quantile(double u) const
{
	if (degenerate())
		return degenerate_value();
	switch (kind) {
	case DistributionKind::Constant: return params[0];
	case DistributionKind::Uniform: return params[0] + (params[1] - params[0]) * u;
	case DistributionKind::TruncatedNormal: {
		// Sample the upper tail by survival probability so that means far below
		// zero keep their precision; the result is >= 0 by construction.
		const boost::math::normal_distribution<double> nd(params[0], params[1]);
		const double mass_above_zero = boost::math::cdf(boost::math::complement(nd, 0.0));
		if (mass_above_zero <= 0.0)
			return 0.0;
		const double x = boost::math::quantile(boost::math::complement(nd, (1.0 - u) * mass_above_zero));
		return std::max(x, 0.0);
	}
	case DistributionKind::LogNormal: {
		const boost::math::normal_distribution<double> sn(0.0, 1.0);
		return std::exp(params[0] + params[1] * boost::math::quantile(sn, u));
	}
	}
	return 0.0;
}

double TabulatedSeries::operator()(double time) const
{
	if (t.empty() || time < t.front() || time > t.back()) {
		std::ostringstream os;
		os.precision(17);
		os << "time " << time << " outside tabulated range";
		throw Error(Errc::TimeOutsideWindow, os.str());
	}
	const auto it = std::lower_bound(t.begin(), t.end(), time);
	const auto i = static_cast<std::size_t>(it - t.begin());
	if (t[i] == time)
		return values[i];
	const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
	return values[i - 1] + w * (values[i] - values[i - 1]);
}

void validate(const NetworkSpec& spec)
{
	if (spec.n_v == 0)
		throw Error(Errc::InvalidSpec, "network needs at least one vertex");
	if (spec.stocks.size() != spec.n_v) {
		std::ostringstream os;
		os << "expected " << spec.n_v << " stock entries, got " << spec.stocks.size();
		throw Error(Errc::InvalidSpec, os.str());
	}
	for (std::size_t k = 0; k < spec.n_v; ++k)
		validate_entry(spec.stocks[k].entry, "stock " + std::to_string(k + 1));

	std::vector<bool> seen(spec.n_v * spec.n_v, false);
	for (const auto& f : spec.flows) {
		if (f.from >= spec.n_v || f.to >= spec.n_v)
			throw Error(Errc::InvalidSpec, "flow " + vertex_pair(f.from, f.to) + " references a missing vertex");
		if (f.from == f.to)
			throw Error(Errc::InvalidSpec, "flow " + vertex_pair(f.from, f.to) + " is a self-loop");
		auto&& slot = seen[f.from * spec.n_v + f.to];
		if (slot)
			throw Error(Errc::InvalidSpec, "duplicate flow " + vertex_pair(f.from, f.to));
		slot = true;
		validate_entry(f.entry, "flow " + vertex_pair(f.from, f.to));
	}
	if (spec.time) {
		const auto& w = *spec.time;
		if (!std::isfinite(w.start) || !std::isfinite(w.end) || !(w.start < w.end) || w.steps < 2)
			throw Error(Errc::InvalidGrid, "time window needs start < end and steps >= 2");
	}
}

bool has_distributions(const NetworkSpec& spec)
{
	auto is_dist = [](const EntrySpec& e) { return std::holds_alternative<DistributionSpec>(e); };
	return std::any_of(spec.stocks.begin(), spec.stocks.end(), [&](const auto& s) { return is_dist(s.entry); }) ||
	       std::any_of(spec.flows.begin(), spec.flows.end(), [&](const auto& f) { return is_dist(f.entry); });
}

bool is_time_invariant(const NetworkSpec& spec)
{
	auto invariant = [](const EntrySpec& e) {
		if (const auto* x = std::get_if<TimeExpression>(&e))
			return is_time_invariant(*x);
		return !std::holds_alternative<TabulatedSeries>(e);
	};
	return std::all_of(spec.stocks.begin(), spec.stocks.end(), [&](const auto& s) { return invariant(s.entry); }) &&
	       std::all_of(spec.flows.begin(), spec.flows.end(), [&](const auto& f) { return invariant(f.entry); });
}

double evaluate_entry(const EntrySpec& entry, double t)
{
	return std::visit(
		[t](const auto& e) -> double {
			using E = std::decay_t<decltype(e)>;
			if constexpr (std::is_same_v<E, Constant>) {
				return e.value;
			} else if constexpr (std::is_same_v<E, TimeExpression>) {
				const double v = e(t);
				if (!std::isfinite(v) || v < 0.0) {
					std::ostringstream os;
					os.precision(17);
					os << "expression '" << e.source() << "' evaluates to " << v << " at t = " << t;
					throw Error(Errc::ExpressionDomainError, os.str());
				}
				return v;
			} else if constexpr (std::is_same_v<E, TabulatedSeries>) {
				return e(t);
			} else {
				throw Error(Errc::DistributionEntryPresent,
				            "distribution entry must be sampled before building a matrix");
			}
		},
		entry);
}

MassFlowMatrix network_to_matrix(const NetworkSpec& spec, double t)
{
	if (spec.time && (t < spec.time->start || t > spec.time->end)) {
		std::ostringstream os;
		os.precision(17);
		os << "t = " << t << " outside the time window [" << spec.time->start << ", " << spec.time->end << "]";
		throw Error(Errc::TimeOutsideWindow, os.str());
	}
	if (spec.stocks.size() != spec.n_v)
		throw Error(Errc::InvalidSpec, "stock entry count does not match n_v");
	const std::size_t n = spec.n_v;
	std::vector<double> dense(n * n, 0.0);
	for (std::size_t k = 0; k < n; ++k)
		dense[k * n + k] = evaluate_entry(spec.stocks[k].entry, t);
	for (const auto& f : spec.flows) {
		if (f.from >= n || f.to >= n || f.from == f.to)
			throw Error(Errc::InvalidSpec, "flow " + vertex_pair(f.from, f.to) + " is not an arc between two vertices");
		dense[f.from * n + f.to] = evaluate_entry(f.entry, t);
	}
	return MassFlowMatrix::from_dense(n, std::move(dense));
}

NetworkSpec constant_network(const MassFlowMatrix& gamma)
{
	NetworkSpec spec;
	spec.n_v = gamma.size();
	for (std::size_t k = 0; k < spec.n_v; ++k)
		spec.stocks.push_back({Constant{gamma.stock(k)}, {}});
	for (std::size_t i = 0; i < spec.n_v; ++i)
		for (std::size_t j = 0; j < spec.n_v; ++j)
			if (i != j && gamma(i, j) != 0.0)
				spec.flows.push_back({i, j, Constant{gamma(i, j)}, {}});
	return spec;
}

NetworkSpec permuted(const NetworkSpec& spec, std::span<const std::size_t> perm)
{
	if (perm.size() != spec.n_v)
		throw Error(Errc::InvalidSpec, "permutation length does not match vertex count");
	std::vector<bool> seen(spec.n_v, false);
	for (std::size_t p : perm) {
		if (p >= spec.n_v || seen[p])
			throw Error(Errc::InvalidSpec, "not a permutation of the vertices");
		seen[p] = true;
	}
	NetworkSpec out = spec;
	for (std::size_t k = 0; k < spec.n_v; ++k)
		out.stocks[perm[k]] = spec.stocks[k];
	for (auto& f : out.flows) {
		f.from = perm[f.from];
		f.to = perm[f.to];
	}
	return out;
}

} // namespace tmn
