#pragma once

#include "tmn/expr.hpp"
#include "tmn/network.hpp"

#include <string>

namespace tmn::testing {

inline const std::string kNetworksDir = TMN_NETWORKS_DIR;

/// Four compartments, constant stocks [10, 20, 15, 5], flows
/// 1->2 |sin(pi t)|, 1->3 |cos(pi t)|, 2->3 4, 3->4 7, 4->1 1.3 on [0, 2].
inline NetworkSpec example1_spec(std::size_t steps = 2001)
{
	NetworkSpec s;
	s.n_v = 4;
	for (double m : {10.0, 20.0, 15.0, 5.0})
		s.stocks.push_back({Constant{m}, {}});
	s.flows.push_back({0, 1, parse_expression("abs(sin(pi*t))"), {}});
	s.flows.push_back({0, 2, parse_expression("abs(cos(pi*t))"), {}});
	s.flows.push_back({1, 2, Constant{4.0}, {}});
	s.flows.push_back({2, 3, Constant{7.0}, {}});
	s.flows.push_back({3, 0, Constant{1.3}, {}});
	s.time = TimeWindow{0.0, 2.0, steps};
	return s;
}

} // namespace tmn::testing
