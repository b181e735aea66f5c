// Acceptance report: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "support/fixtures.hpp"
#include "support/properties.hpp"

#include "cli.hpp"
#include "tmn/dynamics.hpp"
#include "tmn/indicators.hpp"
#include "tmn/io.hpp"
#include "tmn/stochastic.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace tmn;
using namespace tmn::testing;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome
{
	bool ok = true;
	std::string detail;

	void require(bool cond, const std::string& what)
	{
		if (!cond && ok)
			detail = what;
		ok = ok && cond;
	}
};

int g_failed = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body)
{
	Outcome o;
	try {
		o = body();
	} catch (const std::exception& e) {
		o.ok = false;
		o.detail = std::string("exception: ") + e.what();
	}
	if (!o.ok)
		++g_failed;
	std::printf("%s  %-3s %s%s%s\n", o.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), o.detail.empty() ? "" : " | ",
	            o.detail.c_str());
	std::fflush(stdout);
}

std::string fmt(double x)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6g", x);
	return buf;
}

bool within(const std::optional<double>& x, double expected, double tol)
{
	return x && std::fabs(*x - expected) <= tol;
}

/// Reference values for the single-cycle instants t = 0, 1, 2.
struct Reference
{
	double gr = 2.1, ga = 0.34, hr = 1.6, ha = 0.28, ar = 3.1, aa = 0.44, c = 2, s = 0, d = 9.23, theta_s = 50,
	       theta_f = 13.3, theta_d = 6.45;
	std::size_t y = 1;
	std::array<double, 4> theta_a{0.3, -4, -2, 5.7};
};

void check_reference(Outcome& o, const IndicatorReport& r, const std::string& at)
{
	const Reference p;
	constexpr double tol = 0.05;
	o.require(std::fabs(r.lambda_gr - p.gr) <= tol, at + ": lambda_gr = " + fmt(r.lambda_gr));
	o.require(within(r.lambda_ga, p.ga, tol), at + ": lambda_ga");
	o.require(std::fabs(r.lambda_hr - p.hr) <= tol, at + ": lambda_hr = " + fmt(r.lambda_hr));
	o.require(within(r.lambda_ha, p.ha, tol), at + ": lambda_ha");
	o.require(std::fabs(r.lambda_ar - p.ar) <= tol, at + ": lambda_ar = " + fmt(r.lambda_ar));
	o.require(within(r.lambda_aa, p.aa, tol), at + ": lambda_aa");
	o.require(std::fabs(r.lambda_c - p.c) <= tol, at + ": lambda_c");
	o.require(r.lambda_y == p.y, at + ": lambda_y");
	o.require(std::fabs(r.lambda_s - p.s) <= tol, at + ": lambda_s");
	o.require(within(r.lambda_d, p.d, tol), at + ": lambda_d");
	o.require(std::fabs(r.theta_s - p.theta_s) <= tol, at + ": theta_s");
	o.require(std::fabs(r.theta_f - p.theta_f) <= tol, at + ": theta_f");
	o.require(within(r.theta_d, p.theta_d, tol), at + ": theta_d");
	for (std::size_t k = 0; k < 4; ++k)
		o.require(std::fabs(r.theta_a[k] - p.theta_a[k]) <= tol, at + ": theta_a");
}

/// Piecewise closed-form stocks of the balanced example with m0 = [10, 10, 10, 10],
/// evaluated at the instants t = 0.5, 1, 1.5, 2 (constants k^b, k^d, k^f, k^h).
std::array<double, 4> analytic_stocks(double t)
{
	const double m0 = 10.0;
	const double s = std::sin(kPi * t) / kPi;
	const double c = std::cos(kPi * t) / kPi;
	if (t == 0.5)
		return {1.3 * t + c + m0 - 2 / kPi, -c - 4 * t + m0 + 1 / kPi, 4 * t - 7 * t + m0 + 1 / kPi, 5.7 * t + m0};
	if (t == 1.0)
		return {1.3 * t + s + m0 - 4 / kPi, -4 * t + m0 + 2 / kPi, -s + 4 * t - 7 * t + m0 + 2 / kPi, 5.7 * t + m0};
	if (t == 1.5)
		return {1.3 * t - c + m0 - 6 / kPi, c - 4 * t + m0 + 3 / kPi, 4 * t - 7 * t + m0 + 3 / kPi, 5.7 * t + m0};
	return {1.3 * t - s + m0 - 8 / kPi, -4 * t + m0 + 4 / kPi, s + 4 * t - 7 * t + m0 + 4 / kPi, 5.7 * t + m0};
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr)
{
	args.insert(args.begin(), "tmn");
	std::vector<const char*> argv;
	for (const auto& a : args)
		argv.push_back(a.c_str());
	std::ostringstream o, e;
	const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
	if (out)
		*out = o.str();
	return code;
}

} // namespace

int main()
{
	const NetworkSpec ex1 = example1_spec();

	report("1", "example1 at t = 0, 1, 2 matches the reference values (tol 0.05, < 1 s)", [&] {
		Outcome o;
		const auto start = std::chrono::steady_clock::now();
		std::vector<IndicatorReport> reports;
		for (double t : {0.0, 1.0, 2.0})
			reports.push_back(compute_report(network_to_matrix(ex1, t)));
		const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		for (std::size_t i = 0; i < reports.size(); ++i)
			check_reference(o, reports[i], "t=" + fmt(static_cast<double>(i)));
		o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
		if (o.ok)
			o.detail = "lambda_aa = " + fmt(*reports[0].lambda_aa) + ", runtime " + fmt(secs) + " s";
		return o;
	});

	report("2", "example1 at t = 0.5, 1.5: absolute indicators exactly 1", [&] {
		Outcome o;
		for (double t : {0.5, 1.5}) {
			const auto r = compute_report(network_to_matrix(ex1, t));
			const std::string at = "t=" + fmt(t);
			o.require(r.lambda_ga == 1.0 && r.lambda_ha == 1.0 && r.lambda_aa == 1.0, at + ": absolute != 1");
			o.require(std::fabs(r.lambda_gr - 2.46) <= 0.05, at + ": lambda_gr = " + fmt(r.lambda_gr));
			o.require(std::fabs(r.lambda_hr - 1.85) <= 0.05, at + ": lambda_hr = " + fmt(r.lambda_hr));
			o.require(std::fabs(r.lambda_ar - 3.32) <= 0.05, at + ": lambda_ar = " + fmt(r.lambda_ar));
			const std::array<double, 4> ta{0.3, -3, -3, 5.7};
			for (std::size_t k = 0; k < 4; ++k)
				o.require(std::fabs(r.theta_a[k] - ta[k]) <= 1e-9, at + ": theta_a");
		}
		return o;
	});

	report("3", "example1 at generic t matches the two-cycle closed forms (tol 1e-9)", [&] {
		Outcome o;
		double worst = 0.0;
		for (double t : {0.25, 0.1, 0.7, 1.2, 1.85}) {
			const auto r = compute_report(network_to_matrix(ex1, t));
			const double s = std::fabs(std::sin(kPi * t));
			const double c = std::fabs(std::cos(kPi * t));
			const double gr = std::cbrt(9.1 * c) + std::pow(36.4 * s, 0.25);
			const double hr = 3 / (1 / c + 1 / 7.0 + 1 / 1.3) + 4 / (1 / s + 1 / 4.0 + 1 / 7.0 + 1 / 1.3);
			const double ar = (c + 8.3) / 3 + (s + 12.3) / 4;
			const double d = (11 + s + c) / 1.3;
			const double tf = 12.3 + s + c;
			const std::string at = "t=" + fmt(t);
			o.require(r.lambda_y == 2, at + ": lambda_y");
			o.require(r.lambda_c == 2.5, at + ": lambda_c");
			for (auto [got, want, name] : {std::tuple{r.lambda_s, 8.3, "lambda_s"}, std::tuple{r.lambda_gr, gr, "gr"},
			                               std::tuple{r.lambda_hr, hr, "hr"}, std::tuple{r.lambda_ar, ar, "ar"},
			                               std::tuple{*r.lambda_d, d, "d"}, std::tuple{r.theta_f, tf, "theta_f"}}) {
				worst = std::max(worst, std::fabs(got - want));
				o.require(std::fabs(got - want) <= 1e-9, at + ": " + name);
			}
		}
		if (o.ok)
			o.detail = "max |err| = " + fmt(worst);
		return o;
	});

	report("4", "Topology changes on [0, 2] are {0, 0.5, 1, 1.5, 2} within 1e-6", [&] {
		Outcome o;
		const std::array<double, 5> want{0, 0.5, 1, 1.5, 2};
		double worst = 0.0;
		for (std::size_t steps : {2001u, 200u}) {
			const auto tl = detect_topology_changes(ex1, TimeGrid(0, 2, steps));
			const std::string grid = std::to_string(steps) + " samples";
			o.require(tl.changes.size() == want.size(), grid + ": " + std::to_string(tl.changes.size()) + " instants");
			for (std::size_t k = 0; k < std::min(want.size(), tl.changes.size()); ++k) {
				worst = std::max(worst, std::fabs(tl.changes[k].t - want[k]));
				o.require(std::fabs(tl.changes[k].t - want[k]) <= 1e-6, grid + ": t* = " + fmt(tl.changes[k].t));
			}
		}
		if (o.ok)
			o.detail = "max |t* - expected| = " + fmt(worst);
		return o;
	});

	report("5", "example1 imposed balance matches the analytic stocks (tol 1e-3)", [&] {
		Outcome o;
		const TimeGrid grid(0, 2, 2001);
		const auto res = impose_mass_balance(ex1, {10, 10, 10, 10}, grid);
		double worst = 0.0;
		for (std::size_t i : {250u, 500u, 750u, 1000u, 1250u, 1500u, 1750u, 2000u}) {
			const double t = grid.time(i);
			if (t != 0.5 && t != 1.0 && t != 1.5 && t != 2.0)
				continue;
			const auto want = analytic_stocks(t);
			for (std::size_t k = 0; k < 4; ++k) {
				worst = std::max(worst, std::fabs(res.stocks[i][k] - want[k]));
				o.require(std::fabs(res.stocks[i][k] - want[k]) <= 1e-3, "t=" + fmt(t) + ": m_" + std::to_string(k + 1));
			}
		}
		const auto traj = corrected_indicator_trajectory(res, ex1, grid);
		double drift = 0.0;
		bool monotone = true;
		for (std::size_t i = 0; i < traj.size(); ++i) {
			drift = std::max(drift, std::fabs(traj[i].report.theta_s - 40.0));
			if (i > 0 && *traj[i].report.theta_d < *traj[i - 1].report.theta_d)
				monotone = false;
		}
		o.require(drift <= 1e-6, "theta_s drift " + fmt(drift));
		o.require(std::fabs(*traj[0].report.theta_d) <= 1e-12, "theta_d(0) = " + fmt(*traj[0].report.theta_d));
		o.require(monotone, "theta_d decreases");
		if (o.ok)
			o.detail = "max |m - m_exact| = " + fmt(worst) + ", max |theta_s - 40| = " + fmt(drift);
		return o;
	});

	report("6", "Mass balance: example Violated (r = 5.7), imposed output Consistent", [&] {
		Outcome o;
		const std::string input = kNetworksDir + "/example1.json";
		std::string out;
		const int verify = run_cli({"balance", "verify", "--input", input}, &out);
		const auto j = Json::parse(out);
		const double r = j["max_residual"].get<double>();
		o.require(verify == 1, "verify exit " + std::to_string(verify));
		o.require(std::fabs(r - 5.7) <= 1e-9, "max residual " + fmt(r));
		o.require(j["worst_vertex"] == 4, "worst vertex");

		const auto dir = std::filesystem::temp_directory_path() / "tmn-acceptance";
		std::filesystem::create_directories(dir);
		const auto corrected = (dir / "corrected.json").string();
		const int impose = run_cli({"balance", "impose", "--input", input, "--m0", "10,10,10,10", "--out",
		                            (dir / "stocks.csv").string(), "--corrected", corrected});
		o.require(impose == 0, "impose exit " + std::to_string(impose));
		const int again = run_cli({"balance", "verify", "--input", corrected, "--tol", "1e-3"}, &out);
		const double r2 = Json::parse(out)["max_residual"].get<double>();
		o.require(again == 0, "verify corrected exit " + std::to_string(again));
		std::filesystem::remove_all(dir);
		if (o.ok)
			o.detail = "residual " + fmt(r) + " -> " + fmt(r2);
		return o;
	});

	const std::array<std::pair<const char*, PropertyResult (*)()>, 6> props{{
		{"oracle equivalence of Johnson vs brute-force DFS (200 digraphs)", johnson_matches_oracles},
		{"HM <= GM <= AM on every enumerated cycle", mean_ordering},
		{"scale covariance / invariance for alpha in {0.5, 2, 10}", scale_covariance},
		{"sum of theta_a is 0 within 1e-9", theta_a_sums_to_zero},
		{"equal-flow propositions exact to 1e-12", equal_flow_propositions},
		{"square-cycle orientation leaves lambda_aa unchanged", orientation_invariance},
	}};
	const char* letters = "abcdef";
	for (std::size_t i = 0; i < props.size(); ++i) {
		report(std::string("7") + letters[i], props[i].first, [&] {
			const PropertyResult r = props[i].second();
			Outcome o{r.ok, r.ok ? std::to_string(r.checked) + " cases" : r.detail};
			return o;
		});
	}

	report("8", "Stochastic determinism, degenerate equivalence, uniform(3,5) convergence", [&] {
		Outcome o;
		auto spec = ex1;
		spec.flows[2].entry = DistributionSpec::make(DistributionKind::Uniform, {3, 5});
		const std::size_t n_s = 100000;
		const auto a = stochastic_indicators(spec, n_s, 2024, 0.0, {}, Execution::Parallel);
		const auto b = stochastic_indicators(spec, n_s, 2024, 0.0, {}, Execution::Serial);
		o.require(dump_json(stochastic_to_json(a)) == dump_json(stochastic_to_json(b)), "reports differ");
		const double g23 = a.mean_matrix(1, 2);
		o.require(std::fabs(g23 - 4.0) <= 0.02, "mean flow " + fmt(g23));
		o.require(within(a.mean_report.lambda_aa, 3.1 / 7.1, 0.01), "mean lambda_aa");

		NetworkSpec degenerate = constant_network(network_to_matrix(ex1, 0.0));
		for (auto& s : degenerate.stocks)
			s.entry = DistributionSpec::make(DistributionKind::Constant, {std::get<Constant>(s.entry).value});
		for (auto& f : degenerate.flows)
			f.entry = DistributionSpec::make(DistributionKind::Uniform,
			                                 {std::get<Constant>(f.entry).value, std::get<Constant>(f.entry).value});
		const auto d = stochastic_indicators(degenerate, 1000, 1);
		o.require(d.mean_report == compute_report(network_to_matrix(ex1, 0.0)), "degenerate mean report differs");
		check_reference(o, d.mean_report, "degenerate");
		if (o.ok)
			o.detail = "mean flow 2->3 = " + fmt(g23);
		return o;
	});

	std::printf("%s: %d criteria failed\n", g_failed == 0 ? "ALL PASS" : "FAILURES", g_failed);
	return g_failed;
}
