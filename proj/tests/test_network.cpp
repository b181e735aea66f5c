#include "support/fixtures.hpp"

#include "tmn/error.hpp"
#include "tmn/network.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace tmn;
using tmn::testing::example1_spec;

namespace {

Errc code_of(auto&& fn)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected an exception");
	return Errc::Io;
}

} // namespace

TEST_SUITE("network")
{
	TEST_CASE("network_to_matrix evaluates every entry")
	{
		const auto spec = example1_spec();
		const auto g = network_to_matrix(spec, 0.25);
		CHECK(g(0, 1) == doctest::Approx(std::sqrt(0.5)));
		CHECK(g(0, 2) == doctest::Approx(std::sqrt(0.5)));
		CHECK(g(1, 2) == 4);
		CHECK(g(3, 0) == 1.3);
		CHECK(g.stocks() == std::vector<double>{10, 20, 15, 5});
		CHECK(g(2, 0) == 0);
	}

	TEST_CASE("time window is enforced")
	{
		const auto spec = example1_spec();
		CHECK(code_of([&] { network_to_matrix(spec, 2.5); }) == Errc::TimeOutsideWindow);
		CHECK(code_of([&] { network_to_matrix(spec, -0.1); }) == Errc::TimeOutsideWindow);
	}

	TEST_CASE("validate rejects structural errors")
	{
		auto spec = example1_spec();
		spec.flows.push_back({0, 0, Constant{1}, {}});
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidSpec);

		spec = example1_spec();
		spec.flows.push_back({0, 1, Constant{1}, {}});
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidSpec);

		spec = example1_spec();
		spec.flows.push_back({0, 9, Constant{1}, {}});
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidSpec);

		spec = example1_spec();
		spec.stocks.pop_back();
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidSpec);

		spec = example1_spec();
		spec.stocks[0].entry = Constant{-1};
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidSpec);

		spec = example1_spec();
		spec.time = TimeWindow{1, 1, 5};
		CHECK(code_of([&] { validate(spec); }) == Errc::InvalidGrid);
	}

	TEST_CASE("negative expression values are domain errors")
	{
		auto spec = example1_spec();
		spec.flows[0].entry = parse_expression("sin(pi*t)");
		CHECK_NOTHROW(network_to_matrix(spec, 0.5));
		CHECK(code_of([&] { network_to_matrix(spec, 1.5); }) == Errc::ExpressionDomainError);
	}

	TEST_CASE("distribution entries")
	{
		CHECK(code_of([] { distribution_kind_from_string("cauchy"); }) == Errc::UnsupportedDistribution);
		CHECK(distribution_kind_from_string("truncated_normal") == DistributionKind::TruncatedNormal);
		CHECK(to_string(DistributionKind::LogNormal) == "lognormal");

		CHECK(code_of([] { DistributionSpec::make(DistributionKind::Uniform, {3, 2}); }) == Errc::InvalidDistribution);
		CHECK(code_of([] { DistributionSpec::make(DistributionKind::Uniform, {-1, 2}); }) ==
		      Errc::InvalidDistribution);
		CHECK(code_of([] { DistributionSpec::make(DistributionKind::Uniform, {1}); }) == Errc::InvalidDistribution);
		CHECK(code_of([] { DistributionSpec::make(DistributionKind::LogNormal, {0, -1}); }) ==
		      Errc::InvalidDistribution);

		const auto u = DistributionSpec::make(DistributionKind::Uniform, {4, 4});
		CHECK(u.degenerate());
		CHECK(u.quantile(0.123) == 4);

		const auto w = DistributionSpec::make(DistributionKind::Uniform, {0, 2});
		CHECK(w.quantile(0.25) == 0.5);

		const auto tn = DistributionSpec::make(DistributionKind::TruncatedNormal, {1, 2});
		CHECK(tn.quantile(1e-12) >= 0.0);
		double prev = 0.0;
		for (double p = 0.05; p < 1.0; p += 0.05) {
			const double x = tn.quantile(p);
			CHECK(x >= prev);
			prev = x;
		}

		const auto ln = DistributionSpec::make(DistributionKind::LogNormal, {0, 1});
		CHECK(ln.quantile(0.5) == doctest::Approx(1.0));

		auto spec = example1_spec();
		spec.flows[2].entry = w;
		CHECK(has_distributions(spec));
		CHECK(code_of([&] { network_to_matrix(spec, 0); }) == Errc::DistributionEntryPresent);
	}

	TEST_CASE("tabulated series interpolate linearly")
	{
		TabulatedSeries s{{0, 1, 2}, {0, 10, 30}, true};
		CHECK(s(0.5) == 5);
		CHECK(s(1) == 10);
		CHECK(s(2) == 30);
		CHECK(s(1.5) == 20);
		CHECK(code_of([&] { s(2.5); }) == Errc::TimeOutsideWindow);
	}

	TEST_CASE("constant_network round-trips a matrix")
	{
		const auto g = network_to_matrix(example1_spec(), 0.0);
		const auto spec = constant_network(g);
		CHECK(is_time_invariant(spec));
		CHECK(spec.flows.size() == 4);
		CHECK(network_to_matrix(spec, 0.0) == g);
		CHECK_FALSE(is_time_invariant(example1_spec()));
	}

	TEST_CASE("permuted relabels vertices consistently with the matrix")
	{
		const auto spec = example1_spec();
		const std::vector<std::size_t> perm{3, 1, 0, 2};
		const auto p = permuted(spec, perm);
		CHECK(network_to_matrix(p, 0.3) == network_to_matrix(spec, 0.3).permuted(perm));
	}
}
