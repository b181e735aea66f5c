#pragma once

#include "tmn/expr.hpp"
#include "tmn/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tmn {

enum class DistributionKind { Constant, Uniform, TruncatedNormal, LogNormal };

std::string_view to_string(DistributionKind kind) noexcept;
/// Throws UnsupportedDistribution for unknown names.
DistributionKind distribution_kind_from_string(std::string_view name);

/**
 * Distribution of an uncertain entry. Supports are subsets of [0, inf).
 *
 *   constant         params = {value}
 *   uniform          params = {a, b}, 0 <= a <= b
 *   truncated_normal params = {mean, sigma}, normal truncated below at 0
 *   lognormal        params = {mu_log, sigma_log}
 */
struct DistributionSpec
{
	DistributionKind kind = DistributionKind::Constant;
	std::vector<double> params;

	/// Validates the parameter list for `kind`.
	static DistributionSpec make(DistributionKind kind, std::vector<double> params);

	/// True when every draw yields the same value.
	bool degenerate() const;
	double degenerate_value() const;

	/// Inverse CDF; u must lie in (0, 1).
	double quantile(double u) const;

	friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct Constant
{
	double value = 0.0;
	friend bool operator==(const Constant&, const Constant&) = default;
};

/// Piecewise-linear samples, e.g. integrated stock trajectories.
struct TabulatedSeries
{
	std::vector<double> t;
	std::vector<double> values;
	bool integrated = false;

	/// Exact at the nodes; throws TimeOutsideWindow outside [t.front(), t.back()].
	double operator()(double time) const;

	friend bool operator==(const TabulatedSeries&, const TabulatedSeries&) = default;
};

using EntrySpec = std::variant<Constant, TimeExpression, DistributionSpec, TabulatedSeries>;

struct TimeWindow
{
	double start = 0.0;
	double end = 0.0;
	std::size_t steps = 2;
};

struct StockEntry
{
	EntrySpec entry;
	std::string label;
};

/// Flow from vertex `from` to vertex `to` (0-based, from != to).
struct FlowEntry
{
	std::size_t from = 0;
	std::size_t to = 0;
	EntrySpec entry;
	std::string label;
};

/// Declarative description of a material network: one stock per
/// vertex-compartment, one flow per arc-compartment.
struct NetworkSpec
{
	std::size_t n_v = 0;
	std::vector<StockEntry> stocks;
	std::vector<FlowEntry> flows;
	std::optional<TimeWindow> time;

	std::size_t compartment_count() const noexcept { return n_v + flows.size(); }
};

/// Throws InvalidSpec / InvalidDistribution / ExpressionDomainError.
void validate(const NetworkSpec& spec);

bool has_distributions(const NetworkSpec& spec);
bool is_time_invariant(const NetworkSpec& spec);

/// Value of a non-random entry at time t. Throws DistributionEntryPresent
/// for distributions and ExpressionDomainError for negative values.
double evaluate_entry(const EntrySpec& entry, double t);

/// Matrix at time t; absent flows are zero.
MassFlowMatrix network_to_matrix(const NetworkSpec& spec, double t);

/// Static network holding the entries of `gamma` as constants. Zero
/// off-diagonal entries produce no flow entry.
NetworkSpec constant_network(const MassFlowMatrix& gamma);

/// Relabels vertex i as perm[i].
NetworkSpec permuted(const NetworkSpec& spec, std::span<const std::size_t> perm);

} // namespace tmn
