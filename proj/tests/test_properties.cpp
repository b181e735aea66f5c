#include "support/properties.hpp"

#include "tmn/network.hpp"
#include "tmn/stochastic.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace tmn;
using namespace tmn::testing;

TEST_SUITE("properties")
{
	TEST_CASE("Johnson enumeration matches both oracles")
	{
		const auto r = johnson_matches_oracles();
		INFO(r.detail);
		CHECK(r.ok);
		CHECK(r.checked == kCorpusSize);
	}

	TEST_CASE("HM <= GM <= AM on every cycle")
	{
		const auto r = mean_ordering();
		INFO(r.detail);
		CHECK(r.ok);
		CHECK(r.checked > kCorpusSize);
	}

	TEST_CASE("scale covariance")
	{
		const auto r = scale_covariance();
		INFO(r.detail);
		CHECK(r.ok);
	}

	TEST_CASE("accumulation-depletion sums to zero")
	{
		const auto r = theta_a_sums_to_zero();
		INFO(r.detail);
		CHECK(r.ok);
	}

	TEST_CASE("equal-flow propositions")
	{
		const auto r = equal_flow_propositions();
		INFO(r.detail);
		CHECK(r.ok);
	}

	TEST_CASE("orientation invariance")
	{
		const auto r = orientation_invariance();
		INFO(r.detail);
		CHECK(r.ok);
	}

	TEST_CASE("Q empty implies absolute indicators equal one")
	{
		for (std::size_t i = 0; i < kCorpusSize; ++i) {
			const auto g = corpus_graph(i).matrix();
			const auto a = enumerate_cycles(build_digraph(g), kDefaultMaxCycles);
			if (!a.q_arcs.empty() || a.cycles.empty())
				continue;
			const auto r = compute_report(g);
			CHECK(r.lambda_ga == 1.0);
			CHECK(r.lambda_ha == 1.0);
			CHECK(r.lambda_aa == 1.0);
		}
	}

	TEST_CASE("relabeling vertices preserves every indicator except lambda_d")
	{
		std::mt19937_64 rng(99);
		for (std::size_t i = 0; i < kCorpusSize; ++i) {
			const Dense g = corpus_graph(i);
			std::vector<std::size_t> perm(g.n);
			std::iota(perm.begin(), perm.end(), 0);
			std::shuffle(perm.begin(), perm.end(), rng);
			const auto a = compute_report(g.matrix());
			const auto b = compute_report(g.matrix().permuted(perm));
			CAPTURE(i);
			CHECK(close(a.lambda_gr, b.lambda_gr, 1e-12));
			CHECK(close(a.lambda_aa, b.lambda_aa, 1e-12));
			CHECK(close(a.lambda_s, b.lambda_s, 1e-12));
			CHECK(a.lambda_y == b.lambda_y);
			CHECK(close(a.theta_d, b.theta_d, 1e-12));
			for (std::size_t k = 0; k < g.n; ++k)
				CHECK(close(a.theta_a[k], b.theta_a[perm[k]], 1e-12));
		}
	}

	TEST_CASE("every drawn matrix is valid")
	{
		NetworkSpec spec;
		spec.n_v = 3;
		spec.stocks = {{DistributionSpec::make(DistributionKind::LogNormal, {1, 2}), {}},
		               {DistributionSpec::make(DistributionKind::TruncatedNormal, {-1, 3}), {}},
		               {Constant{0}, {}}};
		spec.flows.push_back({0, 1, DistributionSpec::make(DistributionKind::Uniform, {0, 3}), {}});
		spec.flows.push_back({1, 2, DistributionSpec::make(DistributionKind::TruncatedNormal, {0.5, 0.1}), {}});
		spec.flows.push_back({2, 0, DistributionSpec::make(DistributionKind::LogNormal, {-3, 0.5}), {}});
		for (std::uint64_t s = 0; s < 2000; ++s) {
			const auto g = draw_sample(spec, 4, s);
			CHECK_NOTHROW(validate_matrix(g.rows()));
		}
	}
}
