#include "tmn/io.hpp"

#include "tmn/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace tmn {

namespace {

[[noreturn]] void format_error(const std::string& where, const std::string& what)
{
	throw Error(Errc::Format, where + ": " + what);
}

void allow_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> keys)
{
	if (!obj.is_object())
		format_error(where, "expected an object");
	const std::set<std::string_view> allowed(keys);
	for (const auto& [key, value] : obj.items())
		if (!allowed.contains(key))
			format_error(where, "unknown key \"" + key + "\"");
}

const Json& require(const Json& obj, const std::string& where, const char* key)
{
	const auto it = obj.find(key);
	if (it == obj.end())
		format_error(where, std::string("missing key \"") + key + "\"");
	return *it;
}

double as_real(const Json& v, const std::string& where)
{
	if (!v.is_number())
		format_error(where, "expected a number");
	return v.get<double>();
}

std::vector<double> as_reals(const Json& v, const std::string& where)
{
	if (!v.is_array())
		format_error(where, "expected an array of numbers");
	std::vector<double> out;
	out.reserve(v.size());
	for (std::size_t i = 0; i < v.size(); ++i)
		out.push_back(as_real(v[i], where + "[" + std::to_string(i) + "]"));
	return out;
}

std::size_t as_count(const Json& v, const std::string& where, std::size_t min)
{
	if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
		format_error(where, "expected a nonnegative integer");
	const auto x = v.get<std::uint64_t>();
	if (x < min)
		format_error(where, "must be at least " + std::to_string(min));
	return static_cast<std::size_t>(x);
}

std::string as_string(const Json& v, const std::string& where)
{
	if (!v.is_string())
		format_error(where, "expected a string");
	return v.get<std::string>();
}

EntrySpec parse_entry(const Json& obj, const std::string& where, bool label_allowed)
{
	if (!obj.is_object())
		format_error(where, "expected an entry object");
	const char* kinds[] = {"const", "expr", "dist", "table"};
	const char* kind = nullptr;
	for (const char* k : kinds) {
		if (obj.contains(k)) {
			if (kind)
				format_error(where, std::string("entry has both \"") + kind + "\" and \"" + k + "\"");
			kind = k;
		}
	}
	if (!kind)
		format_error(where, "entry needs one of \"const\", \"expr\", \"dist\", \"table\"");
	const std::string kind_s = kind;

	if (kind_s == "table") {
		if (label_allowed)
			allow_keys(obj, where, {"table", "integrated", "label"});
		else
			allow_keys(obj, where, {"table", "integrated"});
	} else if (label_allowed) {
		allow_keys(obj, where, {kind, "label"});
	} else {
		allow_keys(obj, where, {kind});
	}

	const Json& body = obj.at(kind_s);
	const std::string at = where + "." + kind_s;
	if (kind_s == "const")
		return Constant{as_real(body, at)};
	if (kind_s == "expr") {
		try {
			return parse_expression(as_string(body, at));
		} catch (const ParseError& e) {
			throw ParseError(e.code(), e.offset(), e.expected(), at + ": " + e.what());
		}
	}
	if (kind_s == "dist") {
		allow_keys(body, at, {"kind", "params"});
		const auto kind_name = as_string(require(body, at, "kind"), at + ".kind");
		auto params = as_reals(require(body, at, "params"), at + ".params");
		return DistributionSpec{distribution_kind_from_string(kind_name), std::move(params)};
	}
	allow_keys(body, at, {"t", "m"});
	TabulatedSeries tab;
	tab.t = as_reals(require(body, at, "t"), at + ".t");
	tab.values = as_reals(require(body, at, "m"), at + ".m");
	if (const auto it = obj.find("integrated"); it != obj.end()) {
		if (!it->is_boolean())
			format_error(where + ".integrated", "expected a boolean");
		tab.integrated = it->get<bool>();
	}
	return tab;
}

std::string label_of(const Json& obj, const std::string& where)
{
	const auto it = obj.find("label");
	return it == obj.end() ? std::string{} : as_string(*it, where + ".label");
}

Json entry_to_json(const EntrySpec& entry)
{
	return std::visit(
		[](const auto& e) -> Json {
			using E = std::decay_t<decltype(e)>;
			Json j = Json::object();
			if constexpr (std::is_same_v<E, Constant>) {
				j["const"] = e.value;
			} else if constexpr (std::is_same_v<E, TimeExpression>) {
				j["expr"] = e.source().empty() ? print(e) : e.source();
			} else if constexpr (std::is_same_v<E, DistributionSpec>) {
				j["dist"] = {{"kind", std::string(to_string(e.kind))}, {"params", e.params}};
			} else {
				j["table"] = {{"t", e.t}, {"m", e.values}};
				j["integrated"] = e.integrated;
			}
			return j;
		},
		entry);
}

Json optional_number(const std::optional<double>& x)
{
	return x ? Json(*x) : Json(nullptr);
}

Json arc_json(std::size_t tail, std::size_t head)
{
	return Json::array({tail + 1, head + 1});
}

Json weighted_arcs(const std::vector<Arc>& arcs)
{
	Json out = Json::array();
	for (const Arc& a : arcs)
		out.push_back({{"from", a.tail + 1}, {"to", a.head + 1}, {"weight", a.weight}});
	return out;
}

Json arc_list(const std::vector<ArcRef>& arcs)
{
	Json out = Json::array();
	for (const auto& a : arcs)
		out.push_back(arc_json(a.tail, a.head));
	return out;
}

Json stat_json(const EnsembleStat& s)
{
	return {{"mean", optional_number(s.mean)},
	        {"std", s.std},
	        {"defined", s.defined},
	        {"undefined", s.undefined}};
}

void dump_into(std::string& out, const Json& j, int indent)
{
	const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
	const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
	switch (j.type()) {
	case Json::value_t::number_float:
		out += format_number(j.get<double>());
		return;
	case Json::value_t::array:
		if (j.empty()) {
			out += "[]";
			return;
		}
		out += "[\n";
		for (std::size_t i = 0; i < j.size(); ++i) {
			out += inner;
			dump_into(out, j[i], indent + 1);
			out += i + 1 < j.size() ? ",\n" : "\n";
		}
		out += pad + "]";
		return;
	case Json::value_t::object: {
		if (j.empty()) {
			out += "{}";
			return;
		}
		out += "{\n";
		std::size_t i = 0;
		for (const auto& [key, value] : j.items()) {
			out += inner + Json(key).dump() + ": ";
			dump_into(out, value, indent + 1);
			out += ++i < j.size() ? ",\n" : "\n";
		}
		out += pad + "}";
		return;
	}
	default:
		out += j.dump();
	}
}

std::string csv_cell(const std::optional<double>& x)
{
	return x ? format_number(*x) : std::string{};
}

} // namespace

NetworkSpec parse_network(std::string_view text)
{
	Json doc;
	try {
		doc = Json::parse(text.begin(), text.end());
	} catch (const Json::parse_error& e) {
		throw ParseError(Errc::Format, std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size()), {},
		                 std::string("malformed JSON: ") + e.what());
	}
	allow_keys(doc, "network", {"n_v", "stocks", "flows", "time"});

	NetworkSpec spec;
	spec.n_v = as_count(require(doc, "network", "n_v"), "n_v", 1);

	const Json& stocks = require(doc, "network", "stocks");
	if (!stocks.is_array())
		format_error("stocks", "expected an array");
	for (std::size_t k = 0; k < stocks.size(); ++k) {
		const std::string where = "stocks[" + std::to_string(k) + "]";
		spec.stocks.push_back({parse_entry(stocks[k], where, true), label_of(stocks[k], where)});
	}

	if (const auto it = doc.find("flows"); it != doc.end()) {
		if (!it->is_array())
			format_error("flows", "expected an array");
		for (std::size_t f = 0; f < it->size(); ++f) {
			const Json& obj = (*it)[f];
			const std::string where = "flows[" + std::to_string(f) + "]";
			allow_keys(obj, where, {"from", "to", "entry", "label"});
			FlowEntry flow;
			flow.from = as_count(require(obj, where, "from"), where + ".from", 1) - 1;
			flow.to = as_count(require(obj, where, "to"), where + ".to", 1) - 1;
			flow.entry = parse_entry(require(obj, where, "entry"), where + ".entry", false);
			flow.label = label_of(obj, where);
			spec.flows.push_back(std::move(flow));
		}
	}

	if (const auto it = doc.find("time"); it != doc.end()) {
		allow_keys(*it, "time", {"start", "end", "steps"});
		TimeWindow w;
		w.start = as_real(require(*it, "time", "start"), "time.start");
		w.end = as_real(require(*it, "time", "end"), "time.end");
		w.steps = it->contains("steps") ? as_count(it->at("steps"), "time.steps", 0) : 2001;
		spec.time = w;
	}

	validate(spec);
	return spec;
}

NetworkSpec load_network(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(Errc::Io, "cannot read " + path.string());
	std::ostringstream buf;
	buf << in.rdbuf();
	if (in.bad())
		throw Error(Errc::Io, "cannot read " + path.string());
	return parse_network(buf.str());
}

Json network_to_json(const NetworkSpec& spec)
{
	Json doc = Json::object();
	doc["n_v"] = spec.n_v;
	Json stocks = Json::array();
	for (const auto& s : spec.stocks) {
		Json e = entry_to_json(s.entry);
		if (!s.label.empty())
			e["label"] = s.label;
		stocks.push_back(std::move(e));
	}
	doc["stocks"] = std::move(stocks);
	Json flows = Json::array();
	for (const auto& f : spec.flows) {
		Json e = {{"from", f.from + 1}, {"to", f.to + 1}, {"entry", entry_to_json(f.entry)}};
		if (!f.label.empty())
			e["label"] = f.label;
		flows.push_back(std::move(e));
	}
	doc["flows"] = std::move(flows);
	if (spec.time)
		doc["time"] = {{"start", spec.time->start}, {"end", spec.time->end}, {"steps", spec.time->steps}};
	return doc;
}

Json report_to_json(const IndicatorReport& r)
{
	Json j = Json::object();
	const auto& names = scalar_indicator_names();
	for (std::size_t i = 0; i < names.size(); ++i) {
		if (names[i] == "lambda_y")
			j[names[i]] = r.lambda_y;
		else
			j[names[i]] = optional_number(scalar_indicator(r, i));
	}
	j["theta_a"] = r.theta_a;
	j["flags"] = r.flags;
	return j;
}

Json cycles_to_json(const CycleAnalysis& analysis)
{
	Json cycles = Json::array();
	for (const auto& phi : analysis.cycles) {
		Json vertices = Json::array();
		for (std::size_t v : phi.vertices)
			vertices.push_back(v + 1);
		const CycleMeans m = cycle_means(phi);
		cycles.push_back({{"vertices", std::move(vertices)},
		                  {"length", phi.length()},
		                  {"flows", phi.flows},
		                  {"gm", m.gm},
		                  {"hm", m.hm},
		                  {"am", m.am}});
	}
	return {{"cycle_count", analysis.cycle_count()},
	        {"cycles", std::move(cycles)},
	        {"q", weighted_arcs(analysis.q_arcs)},
	        {"s", weighted_arcs(analysis.s_arcs)}};
}

Json topology_to_json(const TopologyTimeline& timeline)
{
	Json t_star = Json::array();
	Json changes = Json::array();
	for (const auto& c : timeline.changes) {
		t_star.push_back(c.t);
		changes.push_back({{"t", c.t},
		                   {"vanished", arc_list(c.vanished)},
		                   {"appeared", arc_list(c.appeared)},
		                   {"touching", c.touching}});
	}
	Json segments = Json::array();
	for (const auto& s : timeline.segments)
		segments.push_back({{"begin", s.begin}, {"end", s.end}, {"arcs", arc_list(s.arcs)}});
	return {{"t_star", std::move(t_star)}, {"changes", std::move(changes)}, {"segments", std::move(segments)}};
}

Json balance_check_to_json(const BalanceCheck& check)
{
	const std::size_t nv = check.residuals.empty() ? 0 : check.residuals.front().size();
	std::vector<double> per_vertex(nv, 0.0);
	std::vector<double> signed_worst(nv, 0.0);
	for (const auto& row : check.residuals) {
		for (std::size_t k = 0; k < nv; ++k) {
			if (std::fabs(row[k]) > per_vertex[k]) {
				per_vertex[k] = std::fabs(row[k]);
				signed_worst[k] = row[k];
			}
		}
	}
	return {{"verdict", check.consistent ? "Consistent" : "Violated"},
	        {"tol", check.tol},
	        {"max_residual", check.max_residual},
	        {"worst_vertex", check.worst_vertex + 1},
	        {"worst_time", check.worst_time},
	        {"residual_by_vertex", signed_worst}};
}

Json stochastic_to_json(const StochasticReport& r)
{
	Json ensemble = Json::object();
	const auto& names = scalar_indicator_names();
	for (std::size_t i = 0; i < names.size(); ++i)
		ensemble[names[i]] = stat_json(r.ensemble[i]);
	Json theta_a = Json::array();
	for (const auto& s : r.ensemble_theta_a)
		theta_a.push_back(stat_json(s));
	ensemble["theta_a"] = std::move(theta_a);

	return {{"n_s", r.n_s},
	        {"seed", r.seed},
	        {"t", optional_number(r.t)},
	        {"mean_matrix", r.mean_matrix.rows()},
	        {"mean_report", report_to_json(r.mean_report)},
	        {"ensemble", std::move(ensemble)}};
}

std::string dump_json(const Json& j)
{
	std::string out;
	dump_into(out, j, 0);
	out += '\n';
	return out;
}

std::string format_number(double x)
{
	if (!std::isfinite(x))
		throw Error(Errc::Format, "cannot serialize a non-finite number");
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", x);
	return buf;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points)
{
	const std::size_t nv = points.empty() ? 0 : points.front().report.theta_a.size();
	os << 't';
	for (const auto& name : scalar_indicator_names())
		os << ',' << name;
	for (std::size_t k = 0; k < nv; ++k)
		os << ",theta_a_" << k + 1;
	os << '\n';
	const std::size_t ns = scalar_indicator_names().size();
	for (const auto& p : points) {
		os << format_number(p.t);
		for (std::size_t i = 0; i < ns; ++i)
			os << ',' << csv_cell(scalar_indicator(p.report, i));
		for (double a : p.report.theta_a)
			os << ',' << format_number(a);
		os << '\n';
	}
}

void write_stocks_csv(std::ostream& os, const BalanceResult& result)
{
	const std::size_t nv = result.stocks.empty() ? 0 : result.stocks.front().size();
	os << 't';
	for (std::size_t k = 0; k < nv; ++k)
		os << ",m_" << k + 1;
	os << '\n';
	for (std::size_t i = 0; i < result.stocks.size(); ++i) {
		os << format_number(result.grid.time(i));
		for (double m : result.stocks[i])
			os << ',' << format_number(m);
		os << '\n';
	}
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw Error(Errc::Io, "cannot write " + path.string());
	out.write(content.data(), static_cast<std::streamsize>(content.size()));
	out.close();
	if (!out)
		throw Error(Errc::Io, "cannot write " + path.string());
}

} // namespace tmn
