#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tmn {

/**
 * Time expression used for dynamic matrix entries.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor ('*' factor)*
 *   factor := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
 *   func   := 'sin' | 'cos' | 'abs'
 *
 * There is no division and no exponentiation, so evaluation is total.
 * Whitespace is ignored between tokens; keywords are case-sensitive.
 */
class TimeExpression
{
public:
	enum class Op : std::uint8_t { Number, Time, Pi, Add, Sub, Mul, Sin, Cos, Abs };

	struct Node
	{
		Op op;
		double value = 0.0; // Number only
		std::int32_t lhs = -1;
		std::int32_t rhs = -1;
	};

	/// Constant expression.
	explicit TimeExpression(double value = 0.0);

	double operator()(double t) const;

	const std::vector<Node>& nodes() const noexcept { return nodes_; }
	std::int32_t root() const noexcept { return root_; }

	/// Source text as given to the parser, or the printed form for built ASTs.
	const std::string& source() const noexcept { return source_; }

	/// Structurally equal ASTs.
	bool same_tree(const TimeExpression& other) const;

	// Builders; each returns a new expression sharing no state with its operands.
	static TimeExpression time();
	static TimeExpression pi();
	static TimeExpression binary(Op op, const TimeExpression& lhs, const TimeExpression& rhs);
	static TimeExpression call(Op fn, const TimeExpression& arg);

private:
	friend class ExpressionParser;
	TimeExpression(std::vector<Node> nodes, std::int32_t root, std::string source);

	std::vector<Node> nodes_;
	std::int32_t root_ = 0;
	std::string source_;
};

/// Throws ParseError (SyntaxError or UnknownFunction) with a byte offset.
TimeExpression parse_expression(std::string_view src);

double evaluate(const TimeExpression& e, double t);

/// Minimal-parenthesis rendering. Numbers use the shortest round-trip form, so
/// parse(print(e)) evaluates bit-identically to e.
std::string print(const TimeExpression& e);

/// Conservative: true only when every value the AST can take is >= 0.
bool definite_nonnegative(const TimeExpression& e);

/// True if the expression does not reference `t`.
bool is_time_invariant(const TimeExpression& e);

} // namespace tmn
