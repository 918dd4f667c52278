#include "cechdr/parser.hpp"

#include <cctype>

namespace cechdr {

namespace {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Comma };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                step();
            tok_ = {Tok::Int, src_.substr(start, pos_ - start), tok_.line, tok_.column};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                step();
            tok_ = {Tok::Ident, src_.substr(start, pos_ - start), tok_.line, tok_.column};
            return;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case '/': kind = Tok::Star; /* placeholder, handled below */ break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        if (c == '/') {
            step();
            tok_ = {Tok::Star, "/", tok_.line, tok_.column};
            slash_ = true;
            return;
        }
        slash_ = false;
        step();
        tok_ = {kind, std::string(1, c), tok_.line, tok_.column};
    }

    bool is_slash() const { return slash_; }

  private:
    void step() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) step();
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
    bool slash_ = false;
};

class Parser {
  public:
    Parser(const std::string& text, const VariableContext& ctx, const Definitions* defs)
        : lex_(text), ctx_(ctx), defs_(defs) {}

    Polynomial parse_poly_full() {
        Polynomial p = parse_poly();
        expect_end();
        return p;
    }

    std::vector<Polynomial> parse_ideal_full() {
        expect(Tok::LBracket, "'['");
        std::vector<Polynomial> polys;
        if (lex_.current().kind != Tok::RBracket) {
            polys.push_back(parse_poly());
            while (lex_.current().kind == Tok::Comma) {
                lex_.advance();
                polys.push_back(parse_poly());
            }
        }
        expect(Tok::RBracket, "']'");
        expect_end();
        return polys;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, lex_.current().line, lex_.current().column);
    }

    void expect(Tok kind, const std::string& what) {
        if (lex_.current().kind != kind) fail("expected " + what);
        lex_.advance();
    }

    void expect_end() {
        if (lex_.current().kind != Tok::End) fail("unexpected trailing input");
    }

    Polynomial parse_poly() {
        bool negate = false;
        if (lex_.current().kind == Tok::Minus) {
            negate = true;
            lex_.advance();
        }
        Polynomial p = parse_term();
        if (negate) p = -p;
        while (lex_.current().kind == Tok::Plus || lex_.current().kind == Tok::Minus) {
            bool minus = lex_.current().kind == Tok::Minus;
            lex_.advance();
            Polynomial t = parse_term();
            if (minus)
                p -= t;
            else
                p += t;
        }
        return p;
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (lex_.current().kind == Tok::Star && !lex_.is_slash()) {
            lex_.advance();
            p = p * parse_factor();
        }
        return p;
    }

    Polynomial parse_factor() {
        Polynomial base = parse_base();
        if (lex_.current().kind == Tok::Caret) {
            lex_.advance();
            if (lex_.current().kind != Tok::Int) fail("expected integer exponent");
            long e = std::stol(lex_.current().text);
            lex_.advance();
            return poly_pow(base, static_cast<int>(e));
        }
        return base;
    }

    Polynomial parse_base() {
        const Token tok = lex_.current();
        switch (tok.kind) {
            case Tok::Int: {
                lex_.advance();
                Integer num(tok.text);
                if (lex_.current().kind == Tok::Star && lex_.is_slash()) {
                    lex_.advance();
                    if (lex_.current().kind != Tok::Int)
                        fail("expected integer denominator");
                    Integer den(lex_.current().text);
                    if (sgn(den) == 0) fail("zero denominator");
                    lex_.advance();
                    return Polynomial::constant(ctx_, make_rational(num, den));
                }
                return Polynomial::constant(ctx_, Rational(num));
            }
            case Tok::Ident: {
                int idx = ctx_.index_of(tok.text);
                if (idx >= 0) {
                    lex_.advance();
                    return Polynomial::variable(ctx_, idx);
                }
                if (defs_) {
                    auto it = defs_->find(tok.text);
                    if (it != defs_->end()) {
                        if (!(it->second.context() == ctx_))
                            throw ParseError("arity mismatch for '" + tok.text + "'",
                                             tok.line, tok.column);
                        lex_.advance();
                        return it->second;
                    }
                }
                throw ParseError("undefined symbol '" + tok.text + "'", tok.line, tok.column);
            }
            case Tok::LParen: {
                lex_.advance();
                Polynomial p = parse_poly();
                expect(Tok::RParen, "')'");
                return p;
            }
            case Tok::Minus: {
                lex_.advance();
                return -parse_factor();
            }
            default:
                fail("expected a number, variable, or '('");
        }
    }

    Lexer lex_;
    const VariableContext& ctx_;
    const Definitions* defs_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VariableContext& ctx,
                            const Definitions* defs) {
    return Parser(text, ctx, defs).parse_poly_full();
}

std::vector<Polynomial> parse_ideal_text(const std::string& text, const VariableContext& ctx,
                                         const Definitions* defs) {
    return Parser(text, ctx, defs).parse_ideal_full();
}

std::vector<std::string> collect_identifiers(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string name = text.substr(start, i - start);
            bool seen = false;
            for (const auto& n : out)
                if (n == name) seen = true;
            if (!seen) out.push_back(name);
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace cechdr
