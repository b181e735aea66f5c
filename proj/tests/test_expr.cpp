#include "tmn/error.hpp"
#include "tmn/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

using namespace tmn;

namespace {

ParseError parse_failure(const std::string& src)
{
	try {
		parse_expression(src);
	} catch (const ParseError& e) {
		return e;
	}
	FAIL("expected a parse error for '" << src << "'");
	return ParseError(Errc::SyntaxError, 0, {}, "");
}

/// Random well-formed source text.
std::string random_source(std::mt19937_64& rng, int depth)
{
	std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
	std::uniform_real_distribution<double> num(0.0, 5.0);
	switch (pick(rng)) {
	case 0: return "t";
	case 1: return "pi";
	case 2: {
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.6g", num(rng));
		return buf;
	}
	case 3: return random_source(rng, depth - 1) + " + " + random_source(rng, depth - 1);
	case 4: return random_source(rng, depth - 1) + "-" + random_source(rng, depth - 1);
	case 5: return random_source(rng, depth - 1) + "*" + random_source(rng, depth - 1);
	case 6: return "sin(" + random_source(rng, depth - 1) + ")";
	case 7: return "abs(" + random_source(rng, depth - 1) + ")";
	default: return "(" + random_source(rng, depth - 1) + ")";
	}
}

} // namespace

TEST_SUITE("expr")
{
	TEST_CASE("evaluates the grammar")
	{
		CHECK(parse_expression("1 + 2*3")(0) == 7);
		CHECK(parse_expression("(1 + 2)*3")(0) == 9);
		CHECK(parse_expression("10 - 4 - 3")(0) == 3);
		CHECK(parse_expression("2.5e1")(0) == 25);
		CHECK(parse_expression("t*t")(3) == 9);
		CHECK(parse_expression("pi")(0) == std::numbers::pi);
		CHECK(parse_expression("abs(sin(pi*t))")(1.5) == doctest::Approx(1.0));
		CHECK(parse_expression("cos(0)")(0) == 1);
		CHECK(parse_expression("  abs ( 0 - 2 ) ")(0) == 2);
		CHECK(evaluate(parse_expression("t"), 0.25) == 0.25);
	}

	TEST_CASE("reports syntax errors with offsets")
	{
		auto e = parse_failure("1 +");
		CHECK(e.code() == Errc::SyntaxError);
		CHECK(e.offset() == 3);
		CHECK_FALSE(e.expected().empty());

		e = parse_failure("2 * (t");
		CHECK(e.code() == Errc::SyntaxError);
		CHECK(e.offset() == 6);

		e = parse_failure("1 2");
		CHECK(e.offset() == 2);

		e = parse_failure("");
		CHECK(e.offset() == 0);

		e = parse_failure("t / 2");
		CHECK(e.offset() == 2);
	}

	TEST_CASE("unknown functions are their own error")
	{
		const auto e = parse_failure("exp(t)");
		CHECK(e.code() == Errc::UnknownFunction);
		CHECK(e.offset() == 0);
		CHECK(parse_failure("tt").code() == Errc::SyntaxError);
	}

	TEST_CASE("deep nesting fails cleanly")
	{
		std::string deep(10000, '(');
		deep += "1";
		deep += std::string(10000, ')');
		CHECK(parse_failure(deep).code() == Errc::SyntaxError);
	}

	TEST_CASE("print uses minimal parentheses")
	{
		CHECK(print(parse_expression("(1+2)*3")) == "(1 + 2)*3");
		CHECK(print(parse_expression("1+(2*3)")) == "1 + 2*3");
		CHECK(print(parse_expression("1-(2-3)")) == "1 - (2 - 3)");
		CHECK(print(parse_expression("(1-2)-3")) == "1 - 2 - 3");
		CHECK(print(parse_expression("abs(sin(pi*t))")) == "abs(sin(pi*t))");
	}

	TEST_CASE("print and parse round-trip bit-identically")
	{
		std::mt19937_64 rng(20240601);
		for (int i = 0; i < 300; ++i) {
			const auto src = random_source(rng, 4);
			const auto e = parse_expression(src);
			const auto back = parse_expression(print(e));
			CAPTURE(src);
			CHECK(back.same_tree(e));
			for (double t : {0.0, 0.3, 1.0, 1.7}) {
				const double a = e(t);
				const double b = back(t);
				CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
			}
		}
	}

	TEST_CASE("builders compose ASTs")
	{
		using Op = TimeExpression::Op;
		const auto e = TimeExpression::call(Op::Abs, TimeExpression::binary(Op::Sub, TimeExpression::time(),
		                                                                     TimeExpression(2.0)));
		CHECK(e(0.5) == 1.5);
		CHECK(print(e) == "abs(t - 2)");
		CHECK(e.same_tree(parse_expression("abs(t-2)")));
		CHECK_THROWS_AS(TimeExpression(std::nan("")), Error);
	}

	TEST_CASE("static analysis")
	{
		CHECK(definite_nonnegative(parse_expression("abs(sin(t))")));
		CHECK(definite_nonnegative(parse_expression("2 + abs(t) * 3")));
		CHECK_FALSE(definite_nonnegative(parse_expression("sin(t)")));
		CHECK_FALSE(definite_nonnegative(parse_expression("1 - t")));
		CHECK(is_time_invariant(parse_expression("pi * 2")));
		CHECK_FALSE(is_time_invariant(parse_expression("0 * t")));
	}
}
