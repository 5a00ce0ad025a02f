#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contractum/error.hpp"
#include "contractum/numeric_text.hpp"

namespace contractum {

/// Compiled arithmetic expression over a fixed list of named variables.
///
/// Grammar (lowest to highest precedence):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | name | name '(' args ')' | '(' expr ')'
///
/// Functions: ln, log, exp, sqrt, abs, sin, cos, tan, min, max.
/// Constants: pi, e. The Unicode operators × ÷ − are accepted as aliases.
class Expression {
public:
    Expression(std::string_view source, std::vector<std::string> variables)
        : source_(source), variables_(std::move(variables)) {
        Parser parser{source_, variables_};
        root_ = parser.parse();
    }

    double operator()(std::span<const double> values) const {
        if (values.size() != variables_.size())
            throw malformed_input("expression '" + source_ + "' expects " + std::to_string(variables_.size()) +
                                  " arguments");
        return root_->eval(values);
    }

    double operator()(std::initializer_list<double> values) const {
        return (*this)(std::span<const double>(values.begin(), values.size()));
    }

    const std::string& source() const noexcept { return source_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }

private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(std::span<const double> vars) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Constant final : Node {
        double value;
        explicit Constant(double v) : value(v) {}
        double eval(std::span<const double>) const override { return value; }
    };

    struct Variable final : Node {
        std::size_t slot;
        explicit Variable(std::size_t s) : slot(s) {}
        double eval(std::span<const double> vars) const override { return vars[slot]; }
    };

    struct Binary final : Node {
        char op;
        NodePtr lhs, rhs;
        Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
        double eval(std::span<const double> vars) const override {
            double a = lhs->eval(vars);
            double b = rhs->eval(vars);
            switch (op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return std::pow(a, b);
            }
        }
    };

    struct Negate final : Node {
        NodePtr operand;
        explicit Negate(NodePtr o) : operand(std::move(o)) {}
        double eval(std::span<const double> vars) const override { return -operand->eval(vars); }
    };

    struct Call final : Node {
        std::function<double(std::span<const double>)> fn;
        std::vector<NodePtr> args;
        double eval(std::span<const double> vars) const override {
            double buffer[4];
            for (std::size_t i = 0; i < args.size(); ++i)
                buffer[i] = args[i]->eval(vars);
            return fn(std::span<const double>(buffer, args.size()));
        }
    };

    struct Token {
        enum Kind { Number, Name, Op, LParen, RParen, Comma, End } kind;
        std::string text;
        std::size_t position;
        double number = 0.0;
    };

    class Parser {
    public:
        Parser(std::string_view source, const std::vector<std::string>& variables)
            : source_(source), variables_(variables) {
            advance();
        }

        NodePtr parse() {
            NodePtr node = expr();
            if (current_.kind != Token::End)
                throw parse_error("unexpected token", current_.text, current_.position);
            return node;
        }

    private:
        void advance() { current_ = lex(); }

        Token lex() {
            while (pos_ < source_.size() && std::isspace(static_cast<unsigned char>(source_[pos_])))
                ++pos_;
            std::size_t start = pos_;
            if (pos_ >= source_.size())
                return {Token::End, "<end>", start};
            char c = source_[pos_];
            // UTF-8 aliases: × (C3 97), ÷ (C3 B7), − (E2 88 92).
            if (source_.substr(pos_, 2) == "\xC3\x97") {
                pos_ += 2;
                return {Token::Op, "*", start};
            }
            if (source_.substr(pos_, 2) == "\xC3\xB7") {
                pos_ += 2;
                return {Token::Op, "/", start};
            }
            if (source_.substr(pos_, 3) == "\xE2\x88\x92") {
                pos_ += 3;
                return {Token::Op, "-", start};
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                while (pos_ < source_.size() &&
                       (std::isdigit(static_cast<unsigned char>(source_[pos_])) || source_[pos_] == '.'))
                    ++pos_;
                if (pos_ < source_.size() && (source_[pos_] == 'e' || source_[pos_] == 'E')) {
                    std::size_t mark = pos_ + 1;
                    if (mark < source_.size() && (source_[mark] == '+' || source_[mark] == '-'))
                        ++mark;
                    if (mark < source_.size() && std::isdigit(static_cast<unsigned char>(source_[mark]))) {
                        pos_ = mark;
                        while (pos_ < source_.size() && std::isdigit(static_cast<unsigned char>(source_[pos_])))
                            ++pos_;
                    }
                }
                std::string text(source_.substr(start, pos_ - start));
                auto value = try_parse_real(text);
                if (!value)
                    throw parse_error("malformed number", text, start);
                Token t{Token::Number, text, start};
                t.number = *value;
                return t;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (pos_ < source_.size() &&
                       (std::isalnum(static_cast<unsigned char>(source_[pos_])) || source_[pos_] == '_'))
                    ++pos_;
                return {Token::Name, std::string(source_.substr(start, pos_ - start)), start};
            }
            ++pos_;
            switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                return {Token::Op, std::string(1, c), start};
            case '(': return {Token::LParen, "(", start};
            case ')': return {Token::RParen, ")", start};
            case ',': return {Token::Comma, ",", start};
            default:
                throw parse_error("unexpected character", std::string(1, c), start);
            }
        }

        bool at_op(char op) const { return current_.kind == Token::Op && current_.text[0] == op; }

        NodePtr expr() {
            NodePtr node = term();
            while (at_op('+') || at_op('-')) {
                char op = current_.text[0];
                advance();
                node = std::make_shared<Binary>(op, node, term());
            }
            return node;
        }

        NodePtr term() {
            NodePtr node = unary();
            while (at_op('*') || at_op('/')) {
                char op = current_.text[0];
                advance();
                node = std::make_shared<Binary>(op, node, unary());
            }
            return node;
        }

        NodePtr unary() {
            if (at_op('-')) {
                advance();
                return std::make_shared<Negate>(unary());
            }
            if (at_op('+')) {
                advance();
                return unary();
            }
            return power();
        }

        NodePtr power() {
            NodePtr base = primary();
            if (at_op('^')) {
                advance();
                return std::make_shared<Binary>('^', base, unary());
            }
            return base;
        }

        NodePtr primary() {
            Token token = current_;
            switch (token.kind) {
            case Token::Number:
                advance();
                return std::make_shared<Constant>(token.number);
            case Token::LParen: {
                advance();
                NodePtr inner = expr();
                expect(Token::RParen, "expected ')'");
                return inner;
            }
            case Token::Name:
                advance();
                if (current_.kind == Token::LParen)
                    return call(token);
                return name(token);
            default:
                throw parse_error("expected a value", token.text, token.position);
            }
        }

        NodePtr name(const Token& token) {
            for (std::size_t i = 0; i < variables_.size(); ++i)
                if (variables_[i] == token.text)
                    return std::make_shared<Variable>(i);
            if (token.text == "pi")
                return std::make_shared<Constant>(std::numbers::pi);
            if (token.text == "e")
                return std::make_shared<Constant>(std::numbers::e);
            throw parse_error("unknown identifier", token.text, token.position);
        }

        NodePtr call(const Token& token) {
            advance(); // '('
            auto node = std::make_shared<Call>();
            node->args.push_back(expr());
            while (current_.kind == Token::Comma) {
                advance();
                node->args.push_back(expr());
            }
            expect(Token::RParen, "expected ')'");

            auto unary_fn = [&](double (*f)(double)) {
                if (node->args.size() != 1)
                    throw parse_error("function takes one argument", token.text, token.position);
                node->fn = [f](std::span<const double> a) { return f(a[0]); };
            };
            const std::string& fname = token.text;
            if (fname == "ln" || fname == "log")
                unary_fn([](double v) { return std::log(v); });
            else if (fname == "exp")
                unary_fn([](double v) { return std::exp(v); });
            else if (fname == "sqrt")
                unary_fn([](double v) { return std::sqrt(v); });
            else if (fname == "abs")
                unary_fn([](double v) { return std::fabs(v); });
            else if (fname == "sin")
                unary_fn([](double v) { return std::sin(v); });
            else if (fname == "cos")
                unary_fn([](double v) { return std::cos(v); });
            else if (fname == "tan")
                unary_fn([](double v) { return std::tan(v); });
            else if (fname == "min" || fname == "max") {
                if (node->args.size() != 2)
                    throw parse_error("function takes two arguments", token.text, token.position);
                bool is_min = fname == "min";
                node->fn = [is_min](std::span<const double> a) {
                    return is_min ? std::min(a[0], a[1]) : std::max(a[0], a[1]);
                };
            } else {
                throw parse_error("unknown function", token.text, token.position);
            }
            return node;
        }

        void expect(Token::Kind kind, const char* message) {
            if (current_.kind != kind)
                throw parse_error(message, current_.text, current_.position);
            advance();
        }

        std::string_view source_;
        const std::vector<std::string>& variables_;
        std::size_t pos_ = 0;
        Token current_{Token::End, "", 0};
    };

    std::string source_;
    std::vector<std::string> variables_;
    NodePtr root_;
};

/// One-variable function from an expression; the variable may be written t or x.
inline std::function<double(double)> unary_function(std::string_view source) {
    Expression expr(source, {"t", "x"});
    return [expr](double v) { return expr({v, v}); };
}

} // namespace contractum
