#include "cli.hpp"

#include "tmn/cycles.hpp"
#include "tmn/dynamics.hpp"
#include "tmn/error.hpp"
#include "tmn/indicators.hpp"
#include "tmn/io.hpp"
#include "tmn/network.hpp"
#include "tmn/stochastic.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tmn::cli {

namespace {

/// Failure to write an output file; maps to its own exit code.
struct OutputError : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

struct GlobalOptions
{
	std::string input;
	double eps_flow = kDefaultEpsFlow;
	std::size_t max_cycles = kDefaultMaxCycles;

	ReportOptions report() const { return {eps_flow, max_cycles}; }
};

struct IndicatorsOptions
{
	std::optional<double> at;
	bool csv = false;
};

struct TrajectoryOptions
{
	std::optional<double> start;
	std::optional<double> end;
	std::optional<std::size_t> steps;
	std::string out;
	bool detect_topology = false;
	std::string topology_out;
};

struct BalanceOptions
{
	std::string mode;
	std::vector<double> m0;
	std::optional<double> start;
	std::optional<double> end;
	std::optional<std::size_t> steps;
	double tol = 1e-3;
	std::string out;
	std::string corrected;
	bool allow_negative = false;
};

struct StochasticOptions
{
	std::size_t samples = 1000;
	std::uint64_t seed = 0;
	std::optional<double> at;
	std::string out;
};

int exit_code_for(Errc code)
{
	switch (code) {
	case Errc::Format:
	case Errc::Io:
	case Errc::SyntaxError:
	case Errc::UnknownFunction: return kInputError;
	case Errc::CycleBudgetExceeded: return kCycleBudget;
	default: return kInvalid;
	}
}

void emit(std::ostream& out, const std::string& path, const std::string& content)
{
	if (path.empty()) {
		out << content;
		return;
	}
	try {
		write_file(path, content);
	} catch (const Error& e) {
		throw OutputError(e.what());
	}
}

double instant(const NetworkSpec& spec, std::optional<double> at)
{
	if (at)
		return *at;
	return spec.time ? spec.time->start : 0.0;
}

TimeGrid make_grid(const NetworkSpec& spec,
                   std::optional<double> start,
                   std::optional<double> end,
                   std::optional<std::size_t> steps)
{
	const TimeGrid base = grid_for(spec);
	return TimeGrid(start.value_or(base.start()), end.value_or(base.end()), steps.value_or(base.size()));
}

int cmd_indicators(const GlobalOptions& g, const IndicatorsOptions& o, std::ostream& out)
{
	const NetworkSpec spec = load_network(g.input);
	const double t = instant(spec, o.at);
	const IndicatorReport report = compute_report(network_to_matrix(spec, t), g.report());
	if (o.csv) {
		std::ostringstream csv;
		write_trajectory_csv(csv, {{t, report}});
		out << csv.str();
	} else {
		Json j = {{"t", t}};
		const Json body = report_to_json(report);
		for (const auto& [key, value] : body.items())
			j[key] = value;
		out << dump_json(j);
	}
	return kOk;
}

int cmd_trajectory(const GlobalOptions& g, const TrajectoryOptions& o, std::ostream& out)
{
	std::string topology_path = o.topology_out;
	if (o.detect_topology && topology_path.empty()) {
		if (o.out.empty())
			throw Error(Errc::Format, "--detect-topology needs --out or --topology-out");
		topology_path = o.out + ".topology.json";
	}
	const NetworkSpec spec = load_network(g.input);
	const TimeGrid grid = make_grid(spec, o.start, o.end, o.steps);
	const auto points = indicator_trajectory(spec, grid, g.report());
	std::ostringstream csv;
	write_trajectory_csv(csv, points);

	std::string topology;
	if (o.detect_topology)
		topology = dump_json(topology_to_json(detect_topology_changes(spec, grid, {g.eps_flow})));
	emit(out, o.out, csv.str());
	if (o.detect_topology)
		emit(out, topology_path, topology);
	return kOk;
}

int cmd_balance(const GlobalOptions& g, const BalanceOptions& o, std::ostream& out, std::ostream& err)
{
	const NetworkSpec spec = load_network(g.input);
	const TimeGrid grid = make_grid(spec, o.start, o.end, o.steps);

	if (o.mode == "verify") {
		const BalanceCheck check = verify_mass_balance(spec, grid, o.tol);
		emit(out, o.out, dump_json(balance_check_to_json(check)));
		if (!check.consistent)
			err << "mass balance violated: |r_" << check.worst_vertex + 1 << "| = " << format_number(check.max_residual)
			    << " at t = " << format_number(check.worst_time) << '\n';
		return check.consistent ? kOk : kViolated;
	}

	if (o.m0.empty())
		throw Error(Errc::InvalidSpec, "impose needs --m0");
	const BalanceResult result = impose_mass_balance(spec, o.m0, grid);
	std::ostringstream csv;
	write_stocks_csv(csv, result);
	emit(out, o.out, csv.str());
	if (!o.corrected.empty())
		emit(out, o.corrected, dump_json(network_to_json(corrected_network(spec, result))));

	for (const auto& n : result.negative_stocks)
		err << (o.allow_negative ? "warning: " : "error: ") << "stock m_" << n.vertex + 1 << " becomes negative ("
		    << format_number(n.value) << ") at t = " << format_number(n.t) << '\n';
	return result.nonphysical() && !o.allow_negative ? kNegativeStock : kOk;
}

int cmd_stochastic(const GlobalOptions& g, const StochasticOptions& o, std::ostream& out)
{
	const NetworkSpec spec = load_network(g.input);
	const StochasticReport report = stochastic_indicators(spec, o.samples, o.seed, o.at, g.report());
	emit(out, o.out, dump_json(stochastic_to_json(report)));
	return kOk;
}

int cmd_cycles(const GlobalOptions& g, std::optional<double> at, std::ostream& out)
{
	const NetworkSpec spec = load_network(g.input);
	const double t = instant(spec, at);
	const MassFlowDigraph d = build_digraph(network_to_matrix(spec, t), g.eps_flow);
	Json j = {{"t", t}};
	const Json body = cycles_to_json(enumerate_cycles(d, g.max_cycles));
	for (const auto& [key, value] : body.items())
		j[key] = value;
	out << dump_json(j);
	return kOk;
}

void describe(std::ostream& err, const Error& e)
{
	err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
	if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
		err << "  at offset " << pe->offset();
		if (!pe->expected().empty()) {
			err << ", expected one of:";
			for (const auto& x : pe->expected())
				err << ' ' << x;
		}
		err << '\n';
	}
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Circularity indicators of thermodynamical material networks", "tmn"};
	app.require_subcommand(1);
	app.fallthrough();

	GlobalOptions g;
	app.add_option("--input", g.input, "Network file (JSON)")->required();
	app.add_option("--eps-flow", g.eps_flow, "Flows at or below this value are absent")->check(CLI::NonNegativeNumber);
	app.add_option("--max-cycles", g.max_cycles, "Cycle enumeration budget")->check(CLI::PositiveNumber);

	IndicatorsOptions ind;
	auto* c_ind = app.add_subcommand("indicators", "All indicators at one instant");
	c_ind->add_option("--at", ind.at, "Evaluation time");
	auto* json_flag = c_ind->add_flag("--json", "JSON output (default)");
	c_ind->add_flag("--csv", ind.csv, "CSV output")->excludes(json_flag);

	TrajectoryOptions traj;
	auto* c_traj = app.add_subcommand("trajectory", "Indicators on a time grid");
	c_traj->add_option("--start", traj.start, "Grid start");
	c_traj->add_option("--end", traj.end, "Grid end");
	c_traj->add_option("--steps", traj.steps, "Number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{100'000'000}));
	c_traj->add_option("--out", traj.out, "CSV path (default: standard output)");
	c_traj->add_flag("--detect-topology", traj.detect_topology, "Also write the t* timeline");
	c_traj->add_option("--topology-out", traj.topology_out, "Timeline path (default: <out>.topology.json)");

	BalanceOptions bal;
	auto* c_bal = app.add_subcommand("balance", "Verify or impose mass balance");
	c_bal->add_option("mode", bal.mode, "verify | impose")->required()->check(CLI::IsMember({"verify", "impose"}));
	c_bal->add_option("--m0", bal.m0, "Initial stocks, comma separated")->delimiter(',');
	c_bal->add_option("--start", bal.start, "Grid start");
	c_bal->add_option("--end", bal.end, "Grid end");
	c_bal->add_option("--steps", bal.steps, "Number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{100'000'000}));
	c_bal->add_option("--tol", bal.tol, "Residual tolerance for verify")->check(CLI::NonNegativeNumber);
	c_bal->add_option("--out", bal.out, "Output path (default: standard output)");
	c_bal->add_option("--corrected", bal.corrected, "Write the corrected network file (impose)");
	c_bal->add_flag("--allow-negative", bal.allow_negative, "Do not fail on negative stocks");

	StochasticOptions sto;
	auto* c_sto = app.add_subcommand("stochastic", "Sample-mean matrix and ensemble statistics");
	c_sto->add_option("--samples", sto.samples, "Number of samples n_s")->check(CLI::PositiveNumber);
	c_sto->add_option("--seed", sto.seed, "RNG seed");
	c_sto->add_option("--at", sto.at, "Evaluation time for time-dependent entries");
	c_sto->add_option("--out", sto.out, "Output path (default: standard output)");

	std::optional<double> cycles_at;
	auto* c_cyc = app.add_subcommand("cycles", "Cycle listing at one instant");
	c_cyc->add_option("--at", cycles_at, "Evaluation time");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kOk : kInputError;
	}

	try {
		if (c_ind->parsed())
			return cmd_indicators(g, ind, out);
		if (c_traj->parsed())
			return cmd_trajectory(g, traj, out);
		if (c_bal->parsed())
			return cmd_balance(g, bal, out, err);
		if (c_sto->parsed())
			return cmd_stochastic(g, sto, out);
		return cmd_cycles(g, cycles_at, out);
	} catch (const OutputError& e) {
		err << "error [Io]: " << e.what() << '\n';
		return kOutputError;
	} catch (const Error& e) {
		describe(err, e);
		return exit_code_for(e.code());
	}
}

} // namespace tmn::cli
