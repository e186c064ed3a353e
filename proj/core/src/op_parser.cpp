#include "metaward/op_parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "metaward/errors.hpp"

namespace metaward {
namespace {

struct Token {
    enum Kind { Number, Word, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind = End;
    std::string text;
    long long num = 0;
    unsigned long long den = 1;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token tok;
            tok.line = line_;
            tok.col = col_;
            if (pos_ >= text_.size()) {
                tok.kind = Token::End;
                out.push_back(tok);
                return out;
            }
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = Token::Number;
                tok.num = static_cast<long long>(read_digits(tok));
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    // only a fraction when a digit follows immediately
                    if (pos_ + 1 < text_.size() &&
                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                        take();
                        tok.text += '/';
                        tok.den = read_digits(tok);
                        if (tok.den == 0) throw ParseError("zero denominator", tok.line, tok.col);
                    }
                }
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                tok.kind = Token::Word;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    tok.text += take();
                }
            } else {
                switch (c) {
                    case '+': tok.kind = Token::Plus; break;
                    case '-': tok.kind = Token::Minus; break;
                    case '*': tok.kind = Token::Star; break;
                    case '^': tok.kind = Token::Caret; break;
                    case '(': tok.kind = Token::LParen; break;
                    case ')': tok.kind = Token::RParen; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
                }
                tok.text = take();
            }
            out.push_back(std::move(tok));
        }
    }

private:
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) take();
    }

    unsigned long long read_digits(Token& tok) {
        unsigned long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            char c = take();
            tok.text += c;
            if (v > (~0ull - 9) / 10) throw ParseError("number too large", tok.line, tok.col);
            v = v * 10 + static_cast<unsigned long long>(c - '0');
        }
        return v;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool word_fits(const std::string& word, const Ring& ring) {
    if (word == "i") return true;
    if (ring.has(word)) return true;
    return word.size() > 1 && word[0] == 'd' && ring.has(word.substr(1));
}

RingPtr detect_ring(const std::vector<Token>& tokens) {
    const RingPtr candidates[] = {Ring::one_body(), Ring::two_body(), Ring::reduced()};
    for (const RingPtr& ring : candidates) {
        bool ok = true;
        for (const Token& tok : tokens) {
            if (tok.kind == Token::Word && !word_fits(tok.text, *ring)) {
                ok = false;
                break;
            }
        }
        if (ok) return ring;
    }
    // diagnose: a symbol unknown everywhere, or an incompatible mixture
    for (const Token& tok : tokens) {
        if (tok.kind != Token::Word) continue;
        bool anywhere = false;
        for (const RingPtr& ring : candidates) anywhere = anywhere || word_fits(tok.text, *ring);
        if (!anywhere) throw ParseError("unknown symbol '" + tok.text + "'", tok.line, tok.col);
    }
    const Token& tok = tokens.front();
    throw ParseError("symbols mix incompatible coordinate sets", tok.line, tok.col);
}

class Parser {
public:
    Parser(std::vector<Token> tokens, RingPtr ring)
        : tokens_(std::move(tokens)), ring_(std::move(ring)) {}

    DiffOp run() {
        DiffOp op = parse_expr();
        const Token& tok = peek();
        if (tok.kind != Token::End)
            throw ParseError("unexpected token '" + tok.text + "'", tok.line, tok.col);
        return op;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    DiffOp parse_expr() {
        DiffOp acc = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = advance().kind == Token::Minus;
            DiffOp term = parse_term();
            if (minus) acc -= term;
            else acc += term;
        }
        return acc;
    }

    DiffOp parse_term() {
        DiffOp acc = parse_factor();
        while (peek().kind == Token::Star) {
            advance();
            acc = compose(acc, parse_factor());
        }
        return acc;
    }

    DiffOp parse_factor() {
        if (peek().kind == Token::Minus) {
            advance();
            return -parse_factor();
        }
        return parse_primary();
    }

    std::optional<long long> try_exponent() {
        if (peek().kind != Token::Caret) return std::nullopt;
        advance();
        bool neg = false;
        if (peek().kind == Token::Minus) {
            advance();
            neg = true;
        }
        const Token& tok = peek();
        if (tok.kind != Token::Number || tok.den != 1)
            throw ParseError("expected an integer exponent", tok.line, tok.col);
        advance();
        return neg ? -tok.num : tok.num;
    }

    DiffOp parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Number: {
                advance();
                GaussianRational q(tok.num, static_cast<long long>(tok.den));
                if (auto k = try_exponent()) q = q.pow(static_cast<int>(*k));
                return DiffOp::multiplication(Poly::constant(ring_, q));
            }
            case Token::Word:
                return parse_word();
            case Token::LParen: {
                advance();
                DiffOp inner = parse_expr();
                const Token& close = peek();
                if (close.kind != Token::RParen)
                    throw ParseError("expected ')'", close.line, close.col);
                advance();
                if (auto k = try_exponent()) {
                    if (*k < 0)
                        throw ParseError("negative exponent requires an invertible symbol",
                                         close.line, close.col);
                    DiffOp acc = DiffOp::multiplication(Poly::constant(ring_, GaussianRational(1)));
                    for (long long j = 0; j < *k; ++j) acc = compose(acc, inner);
                    return acc;
                }
                return inner;
            }
            default:
                throw ParseError("expected a number, symbol, or '('", tok.line, tok.col);
        }
    }

    DiffOp parse_word() {
        const Token tok = advance();
        const std::string& word = tok.text;
        if (word == "i") {
            GaussianRational q = GaussianRational::i();
            if (auto k = try_exponent()) q = q.pow(static_cast<int>(*k));
            return DiffOp::multiplication(Poly::constant(ring_, q));
        }
        if (ring_->has(word)) {
            long long k = try_exponent().value_or(1);
            try {
                return DiffOp::multiplication(Poly::variable(ring_, word, static_cast<int>(k)));
            } catch (const Error& e) {
                throw ParseError(e.what(), tok.line, tok.col);
            }
        }
        if (word.size() > 1 && word[0] == 'd') {
            std::string base = word.substr(1);
            int idx = ring_->index_of(base);
            if (idx >= 0) {
                if (!ring_->symbol(static_cast<std::size_t>(idx)).differentiable)
                    throw ParseError("derivative of non-differentiable symbol '" + base + "'",
                                     tok.line, tok.col);
                long long k = try_exponent().value_or(1);
                if (k < 1) throw ParseError("derivative order must be positive", tok.line, tok.col);
                return DiffOp::derivative(ring_, base, static_cast<int>(k));
            }
        }
        throw ParseError("unknown symbol '" + word + "'", tok.line, tok.col);
    }

    std::vector<Token> tokens_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

} // namespace

DiffOp parse_operator(const std::string& text) {
    std::vector<Token> tokens = Lexer(text).run();
    RingPtr ring = detect_ring(tokens);
    return Parser(std::move(tokens), std::move(ring)).run();
}

DiffOp parse_operator(const std::string& text, RingPtr ring) {
    std::vector<Token> tokens = Lexer(text).run();
    for (const Token& tok : tokens) {
        if (tok.kind == Token::Word && !word_fits(tok.text, *ring))
            throw ParseError("unknown symbol '" + tok.text + "'", tok.line, tok.col);
    }
    return Parser(std::move(tokens), std::move(ring)).run();
}

} // namespace metaward
