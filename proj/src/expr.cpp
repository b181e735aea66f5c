#include "tmn/expr.hpp"

#include "tmn/error.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tmn {

namespace {

using Op = TimeExpression::Op;
using Node = TimeExpression::Node;

constexpr int kMaxDepth = 256;
constexpr std::size_t kMaxNodes = 4096;

int precedence(Op op)
{
	switch (op) {
	case Op::Add:
	case Op::Sub: return 1;
	case Op::Mul: return 2;
	default: return 3;
	}
}

const char* function_name(Op op)
{
	switch (op) {
	case Op::Sin: return "sin";
	case Op::Cos: return "cos";
	case Op::Abs: return "abs";
	default: return "";
	}
}

bool is_ident_start(char c)
{
	return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c)
{
	return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c)
{
	return c >= '0' && c <= '9';
}

std::string format_number(double v)
{
	char buf[64];
	auto res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

std::int32_t append_copy(std::vector<Node>& out, const std::vector<Node>& src, std::int32_t idx)
{
	Node n = src[static_cast<std::size_t>(idx)];
	if (n.lhs >= 0)
		n.lhs = append_copy(out, src, n.lhs);
	if (n.rhs >= 0)
		n.rhs = append_copy(out, src, n.rhs);
	out.push_back(n);
	return static_cast<std::int32_t>(out.size() - 1);
}

double eval_node(const std::vector<Node>& nodes, std::int32_t idx, double t)
{
	const Node& n = nodes[static_cast<std::size_t>(idx)];
	switch (n.op) {
	case Op::Number: return n.value;
	case Op::Time: return t;
	case Op::Pi: return std::numbers::pi;
	case Op::Add: return eval_node(nodes, n.lhs, t) + eval_node(nodes, n.rhs, t);
	case Op::Sub: return eval_node(nodes, n.lhs, t) - eval_node(nodes, n.rhs, t);
	case Op::Mul: return eval_node(nodes, n.lhs, t) * eval_node(nodes, n.rhs, t);
	case Op::Sin: return std::sin(eval_node(nodes, n.lhs, t));
	case Op::Cos: return std::cos(eval_node(nodes, n.lhs, t));
	case Op::Abs: return std::fabs(eval_node(nodes, n.lhs, t));
	}
	return 0.0;
}

void print_node(const std::vector<Node>& nodes, std::int32_t idx, std::string& out)
{
	const Node& n = nodes[static_cast<std::size_t>(idx)];
	auto child = [&](std::int32_t c, bool right) {
		const int pc = precedence(nodes[static_cast<std::size_t>(c)].op);
		const int pp = precedence(n.op);
		// Operators are left-associative; a same-precedence right child keeps
		// its parentheses so the tree shape (and rounding) survives a reparse.
		const bool parens = pc < pp || (right && pc == pp);
		if (parens)
			out += '(';
		print_node(nodes, c, out);
		if (parens)
			out += ')';
	};
	switch (n.op) {
	case Op::Number:
		if (std::signbit(n.value)) {
			out += "(0 - ";
			out += format_number(-n.value);
			out += ')';
		} else {
			out += format_number(n.value);
		}
		break;
	case Op::Time: out += 't'; break;
	case Op::Pi: out += "pi"; break;
	case Op::Add:
	case Op::Sub:
	case Op::Mul:
		child(n.lhs, false);
		out += n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : "*";
		child(n.rhs, true);
		break;
	case Op::Sin:
	case Op::Cos:
	case Op::Abs:
		out += function_name(n.op);
		out += '(';
		print_node(nodes, n.lhs, out);
		out += ')';
		break;
	}
}

bool nonneg_node(const std::vector<Node>& nodes, std::int32_t idx)
{
	const Node& n = nodes[static_cast<std::size_t>(idx)];
	switch (n.op) {
	case Op::Number: return n.value >= 0.0;
	case Op::Pi:
	case Op::Abs: return true;
	case Op::Add:
	case Op::Mul: return nonneg_node(nodes, n.lhs) && nonneg_node(nodes, n.rhs);
	case Op::Time:
	case Op::Sub:
	case Op::Sin:
	case Op::Cos: return false;
	}
	return false;
}

bool same_node(const std::vector<Node>& a, std::int32_t ia, const std::vector<Node>& b, std::int32_t ib)
{
	const Node& x = a[static_cast<std::size_t>(ia)];
	const Node& y = b[static_cast<std::size_t>(ib)];
	if (x.op != y.op)
		return false;
	if (x.op == Op::Number)
		return x.value == y.value && std::signbit(x.value) == std::signbit(y.value);
	if ((x.lhs >= 0) != (y.lhs >= 0) || (x.rhs >= 0) != (y.rhs >= 0))
		return false;
	if (x.lhs >= 0 && !same_node(a, x.lhs, b, y.lhs))
		return false;
	return x.rhs < 0 || same_node(a, x.rhs, b, y.rhs);
}

} // namespace

class ExpressionParser
{
public:
	explicit ExpressionParser(std::string_view src)
		: src_(src)
	{
	}

	TimeExpression run()
	{
		const std::int32_t root = parse_expr(0);
		skip_ws();
		if (pos_ < src_.size())
			fail({"'+'", "'-'", "'*'", "end of input"});
		return TimeExpression(std::move(nodes_), root, std::string(src_));
	}

private:
	void skip_ws()
	{
		while (pos_ < src_.size() &&
		       (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
			++pos_;
	}

	[[noreturn]] void fail(std::vector<std::string> expected, std::size_t at)
	{
		std::ostringstream os;
		os << "syntax error at offset " << at << ": expected ";
		for (std::size_t i = 0; i < expected.size(); ++i)
			os << (i ? ", " : "") << expected[i];
		if (at < src_.size())
			os << " but found '" << src_[at] << "'";
		else
			os << " but reached end of input";
		throw ParseError(Errc::SyntaxError, at, std::move(expected), os.str());
	}

	[[noreturn]] void fail(std::vector<std::string> expected) { fail(std::move(expected), pos_); }

	std::int32_t push(Node n)
	{
		if (nodes_.size() >= kMaxNodes) {
			throw ParseError(Errc::SyntaxError, pos_, {},
			                 "expression has more than " + std::to_string(kMaxNodes) + " nodes");
		}
		nodes_.push_back(n);
		return static_cast<std::int32_t>(nodes_.size() - 1);
	}

	std::int32_t parse_expr(int depth)
	{
		if (depth > kMaxDepth) {
			throw ParseError(Errc::SyntaxError, pos_, {},
			                 "expression nesting deeper than " + std::to_string(kMaxDepth));
		}
		std::int32_t lhs = parse_term(depth);
		for (;;) {
			skip_ws();
			if (pos_ >= src_.size() || (src_[pos_] != '+' && src_[pos_] != '-'))
				return lhs;
			const Op op = src_[pos_] == '+' ? Op::Add : Op::Sub;
			++pos_;
			const std::int32_t rhs = parse_term(depth);
			lhs = push({op, 0.0, lhs, rhs});
		}
	}

	std::int32_t parse_term(int depth)
	{
		std::int32_t lhs = parse_factor(depth);
		for (;;) {
			skip_ws();
			if (pos_ >= src_.size() || src_[pos_] != '*')
				return lhs;
			++pos_;
			const std::int32_t rhs = parse_factor(depth);
			lhs = push({Op::Mul, 0.0, lhs, rhs});
		}
	}

	std::int32_t parse_factor(int depth)
	{
		static const std::vector<std::string> kFactor = {
			"number", "'t'", "'pi'", "'sin'", "'cos'", "'abs'", "'('"};
		skip_ws();
		if (pos_ >= src_.size())
			fail(kFactor);
		const char c = src_[pos_];
		if (c == '(') {
			++pos_;
			const std::int32_t inner = parse_expr(depth + 1);
			expect_close();
			return inner;
		}
		if (is_digit(c) || c == '.')
			return parse_number();
		if (is_ident_start(c)) {
			const std::size_t start = pos_;
			while (pos_ < src_.size() && is_ident_char(src_[pos_]))
				++pos_;
			const std::string_view name = src_.substr(start, pos_ - start);
			if (name == "t")
				return push({Op::Time});
			if (name == "pi")
				return push({Op::Pi});
			Op fn;
			if (name == "sin")
				fn = Op::Sin;
			else if (name == "cos")
				fn = Op::Cos;
			else if (name == "abs")
				fn = Op::Abs;
			else {
				skip_ws();
				if (pos_ < src_.size() && src_[pos_] == '(') {
					throw ParseError(Errc::UnknownFunction, start, {"'sin'", "'cos'", "'abs'"},
					                 "unknown function '" + std::string(name) + "' at offset " +
					                     std::to_string(start));
				}
				fail(kFactor, start);
			}
			skip_ws();
			if (pos_ >= src_.size() || src_[pos_] != '(')
				fail({"'('"});
			++pos_;
			const std::int32_t arg = parse_expr(depth + 1);
			expect_close();
			return push({fn, 0.0, arg, -1});
		}
		fail(kFactor);
	}

	void expect_close()
	{
		skip_ws();
		if (pos_ >= src_.size() || src_[pos_] != ')')
			fail({"'+'", "'-'", "'*'", "')'"});
		++pos_;
	}

	std::int32_t parse_number()
	{
		const std::size_t start = pos_;
		std::size_t digits = 0;
		while (pos_ < src_.size() && is_digit(src_[pos_]))
			++pos_, ++digits;
		if (pos_ < src_.size() && src_[pos_] == '.') {
			++pos_;
			while (pos_ < src_.size() && is_digit(src_[pos_]))
				++pos_, ++digits;
		}
		if (digits == 0)
			fail({"digit"});
		if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
			++pos_;
			if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
				++pos_;
			if (pos_ >= src_.size() || !is_digit(src_[pos_]))
				fail({"exponent digit"});
			while (pos_ < src_.size() && is_digit(src_[pos_]))
				++pos_;
		}
		double value = 0.0;
		const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
		if (res.ec != std::errc{} || !std::isfinite(value)) {
			throw ParseError(Errc::SyntaxError, start, {"finite number"},
			                 "number out of range at offset " + std::to_string(start));
		}
		return push({Op::Number, value});
	}

	std::string_view src_;
	std::size_t pos_ = 0;
	std::vector<Node> nodes_;
};

TimeExpression::TimeExpression(double value)
	: nodes_{Node{Op::Number, value}}
	, root_(0)
{
	if (!std::isfinite(value))
		throw Error(Errc::ExpressionDomainError, "constant expression must be finite");
	source_ = print(*this);
}

TimeExpression::TimeExpression(std::vector<Node> nodes, std::int32_t root, std::string source)
	: nodes_(std::move(nodes))
	, root_(root)
	, source_(std::move(source))
{
}

double TimeExpression::operator()(double t) const
{
	return eval_node(nodes_, root_, t);
}

bool TimeExpression::same_tree(const TimeExpression& other) const
{
	return same_node(nodes_, root_, other.nodes_, other.root_);
}

TimeExpression TimeExpression::time()
{
	return TimeExpression({Node{Op::Time}}, 0, "t");
}

TimeExpression TimeExpression::pi()
{
	return TimeExpression({Node{Op::Pi}}, 0, "pi");
}

TimeExpression TimeExpression::binary(Op op, const TimeExpression& lhs, const TimeExpression& rhs)
{
	if (op != Op::Add && op != Op::Sub && op != Op::Mul)
		throw Error(Errc::InvalidSpec, "not a binary operator");
	std::vector<Node> nodes;
	nodes.reserve(lhs.nodes_.size() + rhs.nodes_.size() + 1);
	const auto l = append_copy(nodes, lhs.nodes_, lhs.root_);
	const auto r = append_copy(nodes, rhs.nodes_, rhs.root_);
	nodes.push_back({op, 0.0, l, r});
	const auto root = static_cast<std::int32_t>(nodes.size() - 1);
	TimeExpression e(std::move(nodes), root, {});
	e.source_ = print(e);
	return e;
}

TimeExpression TimeExpression::call(Op fn, const TimeExpression& arg)
{
	if (fn != Op::Sin && fn != Op::Cos && fn != Op::Abs)
		throw Error(Errc::InvalidSpec, "not a function");
	std::vector<Node> nodes;
	nodes.reserve(arg.nodes_.size() + 1);
	const auto a = append_copy(nodes, arg.nodes_, arg.root_);
	nodes.push_back({fn, 0.0, a, -1});
	const auto root = static_cast<std::int32_t>(nodes.size() - 1);
	TimeExpression e(std::move(nodes), root, {});
	e.source_ = print(e);
	return e;
}

TimeExpression parse_expression(std::string_view src)
{
	return ExpressionParser(src).run();
}

double evaluate(const TimeExpression& e, double t)
{
	return e(t);
}

std::string print(const TimeExpression& e)
{
	std::string out;
	print_node(e.nodes(), e.root(), out);
	return out;
}

bool definite_nonnegative(const TimeExpression& e)
{
	return nonneg_node(e.nodes(), e.root());
}

bool is_time_invariant(const TimeExpression& e)
{
	for (const auto& n : e.nodes())
		if (n.op == Op::Time)
			return false;
	return true;
}

} // namespace tmn
