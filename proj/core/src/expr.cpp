#include "gnvar/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace gnvar {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
            case '-': tok_.kind = Token::Kind::Minus; ++pos_; return;
            case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
            case '/': tok_.kind = Token::Kind::Slash; ++pos_; return;
            case '^': tok_.kind = Token::Kind::Caret; ++pos_; return;
            case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
            case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        // exponent part only when followed by digits (optionally signed)
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;
            }
        }
        tok_.kind = Token::Kind::Number;
        tok_.text = std::string(src_.substr(start, pos_ - start));
        tok_.number = std::strtod(tok_.text.c_str(), nullptr);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr parse() {
        Expr e;
        int root = parse_expr(e);
        (void)root;
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError(lex_.peek().offset, "trailing input after expression");
        return e;
    }

private:
    using K = Token::Kind;

    int push(Expr& e, Expr::Node n) {
        e.nodes.push_back(std::move(n));
        return static_cast<int>(e.nodes.size()) - 1;
    }

    int parse_expr(Expr& e) {
        int lhs = parse_term(e);
        while (lex_.peek().kind == K::Plus || lex_.peek().kind == K::Minus) {
            Token op = lex_.take();
            int rhs = parse_term(e);
            Expr::Node n;
            n.op = (op.kind == K::Plus) ? Expr::Op::Add : Expr::Op::Sub;
            n.a = lhs;
            n.b = rhs;
            lhs = push(e, std::move(n));
        }
        return lhs;
    }

    int parse_term(Expr& e) {
        int lhs = parse_factor(e);
        while (lex_.peek().kind == K::Star || lex_.peek().kind == K::Slash) {
            Token op = lex_.take();
            int rhs = parse_factor(e);
            Expr::Node n;
            n.op = (op.kind == K::Star) ? Expr::Op::Mul : Expr::Op::Div;
            n.a = lhs;
            n.b = rhs;
            lhs = push(e, std::move(n));
        }
        return lhs;
    }

    int parse_factor(Expr& e) {
        if (lex_.peek().kind == K::Minus) {
            lex_.take();
            int a = parse_factor(e);
            Expr::Node n;
            n.op = Expr::Op::Neg;
            n.a = a;
            return push(e, std::move(n));
        }
        int a = parse_atom(e);
        if (lex_.peek().kind == K::Caret) {
            lex_.take();
            int expn = parse_integer_exponent();
            Expr::Node n;
            n.op = Expr::Op::PowInt;
            n.a = a;
            n.exponent = expn;
            return push(e, std::move(n));
        }
        return a;
    }

    int parse_integer_exponent() {
        int sign = 1;
        if (lex_.peek().kind == K::Minus) {
            lex_.take();
            sign = -1;
        }
        Token t = lex_.peek();
        if (t.kind != K::Number) throw ParseError(t.offset, "expected integer exponent after '^'");
        double v = t.number;
        if (v != std::floor(v) || t.text.find('.') != std::string::npos ||
            t.text.find('e') != std::string::npos || t.text.find('E') != std::string::npos)
            throw ParseError(t.offset, "non-integer exponent");
        lex_.take();
        return sign * static_cast<int>(v);
    }

    int parse_atom(Expr& e) {
        Token t = lex_.take();
        switch (t.kind) {
            case K::Number: {
                Expr::Node n;
                n.op = Expr::Op::Const;
                n.value = t.number;
                return push(e, std::move(n));
            }
            case K::LParen: {
                int inner = parse_expr(e);
                expect(K::RParen, "expected ')'");
                return inner;
            }
            case K::Ident: return parse_ident(e, t);
            default: throw ParseError(t.offset, "expected a number, identifier or '('");
        }
    }

    int parse_ident(Expr& e, const Token& t) {
        static const std::set<std::string> funcs = {"sin", "cos", "exp"};
        if (funcs.count(t.text)) {
            expect(K::LParen, "expected '(' after function name");
            int a = parse_expr(e);
            expect(K::RParen, "expected ')'");
            Expr::Node n;
            n.a = a;
            if (t.text == "sin")
                n.op = Expr::Op::Sin;
            else if (t.text == "cos")
                n.op = Expr::Op::Cos;
            else
                n.op = Expr::Op::Exp;
            return push(e, std::move(n));
        }
        // x followed by digits is a chart variable; only x0..x3 exist
        if (t.text.size() >= 2 && t.text[0] == 'x' &&
            std::all_of(t.text.begin() + 1, t.text.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            if (t.text.size() == 2 && t.text[1] >= '0' && t.text[1] <= '3') {
                Expr::Node n;
                n.op = Expr::Op::Var;
                n.var = t.text[1] - '0';
                return push(e, std::move(n));
            }
            throw ParseError(t.offset, "unknown identifier '" + t.text + "'");
        }
        Expr::Node n;
        n.op = Expr::Op::NamedConst;
        n.name = t.text;
        return push(e, std::move(n));
    }

    void expect(K kind, const char* msg) {
        if (lex_.peek().kind != kind) throw ParseError(lex_.peek().offset, msg);
        lex_.take();
    }

    Lexer lex_;
};

} // namespace

Expr parse_expression(std::string_view src) {
    Parser p(src);
    Expr e = p.parse();
    e.source = std::string(src);
    return e;
}

std::vector<std::string> Expr::constant_names() const {
    std::set<std::string> names;
    for (const Node& n : nodes)
        if (n.op == Op::NamedConst) names.insert(n.name);
    return {names.begin(), names.end()};
}

double Expr::eval_value(const std::array<double, 4>& x, const ConstMap& consts) const {
    return eval_generic<double>(x, consts, [](double v) { return v; });
}

Jet eval_jet(const Expr& e, const std::array<double, 4>& point, int order, const ConstMap& consts) {
    if (e.empty()) throw EvalError("empty expression");
    std::array<Jet, 4> x{
        Jet::coordinate(0, order, point),
        Jet::coordinate(1, order, point),
        Jet::coordinate(2, order, point),
        Jet::coordinate(3, order, point),
    };
    return e.eval_generic<Jet>(x, consts,
                               [&](double v) { return Jet::constant(v, order, point); });
}

} // namespace gnvar
