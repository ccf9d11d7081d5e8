#include "planarlie/expr.hpp"

#include <cctype>
#include <sstream>

#include "planarlie/errors.hpp"

namespace planarlie {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    int line, col;
};

std::vector<Token> tokenize(const std::string& text, int line_offset) {
    std::vector<Token> out;
    int line = line_offset, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string t) {
        out.push_back({k, std::move(t), line, col});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace((unsigned char)c)) {
            ++col;
            ++i;
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            push(Token::Kind::Number, text.substr(i, j - i));
            col += (int)(j - i);
            i = j;
            continue;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_')) ++j;
            push(Token::Kind::Ident, text.substr(i, j - i));
            col += (int)(j - i);
            i = j;
            continue;
        }
        switch (c) {
            case '+': push(Token::Kind::Plus, "+"); break;
            case '-': push(Token::Kind::Minus, "-"); break;
            case '*': push(Token::Kind::Star, "*"); break;
            case '/': push(Token::Kind::Slash, "/"); break;
            case '^': push(Token::Kind::Caret, "^"); break;
            case '(': push(Token::Kind::LParen, "("); break;
            case ')': push(Token::Kind::RParen, ")"); break;
            default:
                throw ParseError(ParseError::Kind::Syntax, line, col,
                                 std::string("unexpected character '") + c + "'");
        }
        ++col;
        ++i;
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

// Scalar part plus Dx/Dy coefficient parts of a subexpression.
struct PartialField {
    ExpPoly s, p, q;
    bool has_basis() const { return !p.is_zero() || !q.is_zero(); }
};

class Parser {
  public:
    Parser(const std::string& text, int line_offset) : toks_(tokenize(text, line_offset)) {}

    PartialField parse_expression_all() {
        PartialField r = expression(0);
        expect_end();
        return r;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    static constexpr int kMaxDepth = 200;
    static constexpr long kMaxExponent = 64;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const Token& t, const std::string& msg,
                           ParseError::Kind kind = ParseError::Kind::Syntax) const {
        throw ParseError(kind, t.line, t.col, msg);
    }
    void expect_end() {
        if (peek().kind != Token::Kind::End)
            fail(peek(), "unexpected trailing input '" + peek().text + "'");
    }

    PartialField expression(int depth) {
        if (depth > kMaxDepth) fail(peek(), "expression too deeply nested");
        PartialField acc;
        bool negate = false;
        if (peek().kind == Token::Kind::Minus) {
            next();
            negate = true;
        }
        PartialField t = term(depth);
        acc = combine_add(acc, t, negate);
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            bool minus = next().kind == Token::Kind::Minus;
            PartialField u = term(depth);
            acc = combine_add(acc, u, minus);
        }
        return acc;
    }

    static PartialField combine_add(PartialField acc, const PartialField& t, bool minus) {
        if (minus) {
            acc.s -= t.s;
            acc.p -= t.p;
            acc.q -= t.q;
        } else {
            acc.s += t.s;
            acc.p += t.p;
            acc.q += t.q;
        }
        return acc;
    }

    PartialField term(int depth) {
        PartialField acc = factor(depth);
        while (peek().kind == Token::Kind::Star) {
            Token star = next();
            PartialField f = factor(depth);
            if (acc.has_basis() && f.has_basis())
                fail(star, "a summand multiplies two basis symbols", ParseError::Kind::MixedBasis);
            PartialField r;
            r.s = acc.s * f.s;
            r.p = acc.s * f.p + acc.p * f.s;
            r.q = acc.s * f.q + acc.q * f.s;
            acc = std::move(r);
        }
        return acc;
    }

    PartialField factor(int depth) {
        PartialField base = primary(depth);
        while (peek().kind == Token::Kind::Caret) {
            Token caret = next();
            if (peek().kind != Token::Kind::Number) fail(peek(), "expected integer exponent");
            Token e = next();
            long exp = 0;
            try {
                exp = std::stol(e.text);
            } catch (...) {
                fail(e, "exponent too large");
            }
            if (exp > kMaxExponent) fail(e, "exponent too large");
            if (base.has_basis() && exp != 1)
                fail(caret, "basis symbol raised to a power", ParseError::Kind::MixedBasis);
            base.s = base.s.pow((int)exp);
        }
        return base;
    }

    PartialField primary(int depth) {
        const Token t = next();
        PartialField r;
        switch (t.kind) {
            case Token::Kind::Number: {
                mpz_class num(t.text, 10);
                mpz_class den(1);
                if (peek().kind == Token::Kind::Slash) {
                    next();
                    if (peek().kind != Token::Kind::Number) fail(peek(), "expected denominator");
                    Token d = next();
                    den = mpz_class(d.text, 10);
                    if (den == 0) fail(d, "zero denominator");
                }
                mpq_class v(num, den);
                v.canonicalize();
                r.s = ExpPoly::constant(GaussianRational(v));
                return r;
            }
            case Token::Kind::LParen: {
                PartialField inner = expression(depth + 1);
                if (peek().kind != Token::Kind::RParen) fail(peek(), "expected ')'");
                next();
                return inner;
            }
            case Token::Kind::Ident: {
                if (t.text == "i") {
                    r.s = ExpPoly::constant(GaussianRational::imaginary_unit());
                    return r;
                }
                if (t.text == "x") {
                    r.s = ExpPoly::variable(Var::x);
                    return r;
                }
                if (t.text == "y") {
                    r.s = ExpPoly::variable(Var::y);
                    return r;
                }
                if (t.text == "Dx") {
                    r.p = ExpPoly::one();
                    return r;
                }
                if (t.text == "Dy") {
                    r.q = ExpPoly::one();
                    return r;
                }
                if (t.text == "exp") {
                    if (peek().kind != Token::Kind::LParen) fail(peek(), "expected '(' after exp");
                    next();
                    PartialField arg = expression(depth + 1);
                    if (peek().kind != Token::Kind::RParen) fail(peek(), "expected ')'");
                    next();
                    if (arg.has_basis())
                        fail(t, "exp argument contains a basis symbol",
                             ParseError::Kind::RingViolation);
                    GaussianRational lx, ly;
                    for (const auto& [m, c] : arg.s.terms()) {
                        if (m.xdeg == 1 && m.ydeg == 0 && m.xfreq.is_zero() && m.yfreq.is_zero())
                            lx = c;
                        else if (m.xdeg == 0 && m.ydeg == 1 && m.xfreq.is_zero() && m.yfreq.is_zero())
                            ly = c;
                        else
                            fail(t, "exp argument is not linear in x and y",
                                 ParseError::Kind::RingViolation);
                    }
                    r.s = ExpPoly::exponential(lx, ly);
                    return r;
                }
                fail(t, "unknown symbol '" + t.text + "'");
            }
            default:
                fail(t, "unexpected token '" + (t.kind == Token::Kind::End ? "end of input" : t.text) + "'");
        }
    }
};

}  // namespace

VectorField parse_field(const std::string& text, int line_offset) {
    Parser parser(text, line_offset);
    PartialField r = parser.parse_expression_all();
    if (!r.s.is_zero())
        throw ParseError(ParseError::Kind::Syntax, line_offset, 1,
                         "expression has a summand without Dx or Dy");
    return {r.p, r.q};
}

ExpPoly parse_scalar_poly(const std::string& text, int line_offset) {
    Parser parser(text, line_offset);
    PartialField r = parser.parse_expression_all();
    if (r.has_basis())
        throw ParseError(ParseError::Kind::Syntax, line_offset, 1,
                         "expected a scalar expression without Dx or Dy");
    return r.s;
}

GaussianRational parse_scalar(const std::string& text) {
    ExpPoly p = parse_scalar_poly(text);
    if (!p.is_constant())
        throw ParseError(ParseError::Kind::Syntax, 1, 1, "expected a constant scalar");
    return p.constant_value();
}

std::string print_field(const VectorField& v) { return v.str(); }

std::vector<VectorField> parse_algebra_file(const std::string& text) {
    std::vector<VectorField> fields;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace((unsigned char)c)) blank = false;
        if (blank) continue;
        fields.push_back(parse_field(line, lineno));
    }
    return fields;
}

}  // namespace planarlie
