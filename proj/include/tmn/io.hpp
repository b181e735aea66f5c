#pragma once

#include "tmn/cycles.hpp"
#include "tmn/dynamics.hpp"
#include "tmn/indicators.hpp"
#include "tmn/network.hpp"
#include "tmn/stochastic.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tmn {

using Json = nlohmann::ordered_json;

/**
 * Network file reader. Entry objects are {"const": x}, {"expr": "..."},
 * {"dist": {"kind": k, "params": [...]}} or {"table": {"t": [...], "m": [...]},
 * "integrated": bool}; stocks may add "label". Vertices are 1-based.
 *
 * Malformed JSON, wrong shapes and unknown keys raise Errc::Format; bad
 * expressions raise ParseError; the parsed spec is then validated.
 */
NetworkSpec parse_network(std::string_view text);
/// Errc::Io if the file cannot be read.
NetworkSpec load_network(const std::filesystem::path& path);

Json network_to_json(const NetworkSpec& spec);

/// Undefined indicators are null and listed under "flags".
Json report_to_json(const IndicatorReport& report);
Json cycles_to_json(const CycleAnalysis& analysis);
Json topology_to_json(const TopologyTimeline& timeline);
Json balance_check_to_json(const BalanceCheck& check);
Json stochastic_to_json(const StochasticReport& report);

/// Pretty JSON with every float written to 17 significant digits.
std::string dump_json(const Json& j);

/// printf %.17g; non-finite values are rejected with Errc::Format.
std::string format_number(double x);

/// Header t, scalar indicators, theta_a_1..theta_a_n; undefined cells are empty.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points);
/// Header t, m_1..m_n.
void write_stocks_csv(std::ostream& os, const BalanceResult& result);

/// Writes `content` to `path`; Errc::Io on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace tmn
