#include "tmn/dynamics.hpp"

#include "tmn/error.hpp"

#include <cmath>
#include <exception>

namespace tmn {

namespace {

constexpr int kSimpsonPanels = 4;

/// ∫ θ_A over [a, b] by composite Simpson.
std::vector<double> integrate_rates(const NetworkSpec& spec, double a, double b)
{
	const double h = (b - a) / kSimpsonPanels;
	std::vector<double> acc(spec.n_v, 0.0);
	for (int j = 0; j <= kSimpsonPanels; ++j) {
		const double t = j == kSimpsonPanels ? b : a + h * j;
		const double w = (j == 0 || j == kSimpsonPanels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
		const auto r = accumulation_rates(spec, t);
		for (std::size_t k = 0; k < spec.n_v; ++k)
			acc[k] += w * r[k];
	}
	for (double& v : acc)
		v *= h / 3.0;
	return acc;
}

std::vector<std::vector<double>> balance_residuals(const NetworkSpec& spec,
                                                   const std::vector<double>& times,
                                                   const std::vector<std::vector<double>>& stocks)
{
	const std::size_t n = times.size();
	const std::size_t nv = spec.n_v;

	// Per-interval integrals are independent.
	std::vector<std::vector<double>> interval(n - 1);
	std::vector<std::exception_ptr> errors(n - 1);
	const auto count = static_cast<std::ptrdiff_t>(n - 1);
#pragma omp parallel for schedule(static)
	for (std::ptrdiff_t i = 0; i < count; ++i) {
		const auto u = static_cast<std::size_t>(i);
		try {
			interval[u] = integrate_rates(spec, times[u], times[u + 1]);
		} catch (...) {
			errors[u] = std::current_exception();
		}
	}
	for (const auto& e : errors)
		if (e)
			std::rethrow_exception(e);

	std::vector<std::vector<double>> residuals(n, std::vector<double>(nv, 0.0));
	for (std::size_t i = 0; i < n; ++i) {
		const std::size_t lo = i == 0 ? 0 : i - 1;
		const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
		const double width = times[hi] - times[lo];
		for (std::size_t k = 0; k < nv; ++k) {
			double integral = 0.0;
			for (std::size_t j = lo; j < hi; ++j)
				integral += interval[j][k];
			const double slope = (stocks[hi][k] - stocks[lo][k]) / width;
			residuals[i][k] = integral / width - slope;
		}
	}
	return residuals;
}

void check_no_distributions(const NetworkSpec& spec)
{
	if (has_distributions(spec))
		throw Error(Errc::DistributionEntryPresent, "mass balance needs deterministic entries");
}

} // namespace

BalanceCheck verify_mass_balance(const NetworkSpec& spec, const TimeGrid& grid, double tol)
{
	check_no_distributions(spec);
	BalanceCheck out;
	out.tol = tol;
	out.times = grid.times();
	std::vector<std::vector<double>> stocks(out.times.size(), std::vector<double>(spec.n_v));
	for (std::size_t i = 0; i < out.times.size(); ++i)
		for (std::size_t k = 0; k < spec.n_v; ++k)
			stocks[i][k] = evaluate_entry(spec.stocks[k].entry, out.times[i]);
	out.residuals = balance_residuals(spec, out.times, stocks);

	for (std::size_t i = 0; i < out.times.size(); ++i) {
		for (std::size_t k = 0; k < spec.n_v; ++k) {
			const double r = std::fabs(out.residuals[i][k]);
			if (r > out.max_residual) {
				out.max_residual = r;
				out.worst_vertex = k;
				out.worst_time = out.times[i];
			}
		}
	}
	out.consistent = out.max_residual <= tol;
	return out;
}

BalanceResult impose_mass_balance(const NetworkSpec& spec,
                                  const std::vector<double>& m0,
                                  const TimeGrid& grid,
                                  double negative_tol)
{
	check_no_distributions(spec);
	if (m0.size() != spec.n_v)
		throw Error(Errc::InvalidSpec, "initial stocks need one value per vertex");
	for (double v : m0)
		if (!std::isfinite(v) || v < 0.0)
			throw Error(Errc::InvalidSpec, "initial stocks must be finite and >= 0");

	const std::size_t n = grid.size();
	const std::size_t nv = spec.n_v;
	BalanceResult out{grid, {}, {}, {}, 0.0, 0.0, {}};
	out.stocks.reserve(n);
	out.stocks.push_back(m0);

	// The right-hand side does not depend on m, so k2 == k3; the general
	// RK4 form is kept for clarity.
	std::vector<double> m = m0;
	for (std::size_t i = 0; i + 1 < n; ++i) {
		const double t = grid.time(i);
		const double h = grid.time(i + 1) - t;
		const auto k1 = accumulation_rates(spec, t);
		const auto k2 = accumulation_rates(spec, t + 0.5 * h);
		const auto& k3 = k2;
		const auto k4 = accumulation_rates(spec, grid.time(i + 1));
		for (std::size_t k = 0; k < nv; ++k)
			m[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
		out.stocks.push_back(m);
	}

	std::vector<bool> flagged(nv, false);
	out.total_mass.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		double total = 0.0;
		for (std::size_t k = 0; k < nv; ++k) {
			const double v = out.stocks[i][k];
			total += v;
			if (v < -negative_tol && !flagged[k]) {
				flagged[k] = true;
				out.negative_stocks.push_back({k, grid.time(i), v});
			}
		}
		out.total_mass[i] = total;
	}
	out.residuals = balance_residuals(spec, grid.times(), out.stocks);
	return out;
}

} // namespace tmn
