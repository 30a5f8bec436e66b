// parse.hpp -- concrete syntax for probabilistic regular expressions
//
// Grammar (whitespace insensitive):
//   expr   := choice
//   choice := seq ("+[" prob "]" choice)?
//   seq    := star (";" seq)?
//   star   := atom ("^[" prob "]")*
//   atom   := "0" | "1" | letter | "(" expr ")"
//   prob   := integer "/" positive-integer | decimal | integer
//
// Star binds tightest, then sequencing, then choice; seq and choice
// associate to the right. The aliases "⊕[p]" and "^{[p]}" are accepted
// on input and never emitted.
#ifndef PRE_PARSE_HPP
#define PRE_PARSE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pre/expr.hpp"
#include "pre/rational.hpp"

namespace pre {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = parse_choice();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
    }

    bool try_consume(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool choice_operator() {
        // "+[" or the alias "⊕[" (U+2295).
        return try_consume("+[") || try_consume("\xe2\x8a\x95[");
    }

    Expr parse_choice() {
        std::vector<std::pair<Expr, Prob>> init;
        Expr last = parse_seq();
        while (choice_operator()) {
            Prob p = parse_prob();
            expect(']');
            init.emplace_back(std::move(last), std::move(p));
            last = parse_seq();
        }
        for (auto it = init.rbegin(); it != init.rend(); ++it)
            last = Expr::choice(it->first, it->second, last);
        return last;
    }

    Expr parse_seq() {
        std::vector<Expr> parts{parse_star()};
        while (try_consume(";")) parts.push_back(parse_star());
        Expr out = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) out = Expr::seq(parts[i], out);
        return out;
    }

    Expr parse_star() {
        Expr e = parse_atom();
        while (true) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '^') break;
            ++pos_;
            skip_ws();
            bool braced = pos_ < text_.size() && text_[pos_] == '{';
            if (braced) ++pos_;
            expect('[');
            Prob p = parse_prob();
            expect(']');
            if (braced) expect('}');
            e = Expr::star(e, p);
        }
        return e;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '0') {
            ++pos_;
            return Expr::zero();
        }
        if (c == '1') {
            ++pos_;
            return Expr::one();
        }
        if (is_letter(c)) {
            ++pos_;
            return Expr::act(c);
        }
        if (c == '(') {
            ++pos_;
            Expr e = parse_choice();
            expect(')');
            return e;
        }
        throw ParseError(std::string("unknown symbol '") + c + "'", pos_);
    }

    Prob parse_prob() {
        skip_ws();
        std::size_t start = pos_;
        auto digits = [this] {
            std::size_t from = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            return pos_ > from;
        };
        if (!digits()) throw ParseError("expected probability", pos_);
        if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
            char sep = text_[pos_];
            ++pos_;
            if (!digits()) throw ParseError("expected digits", pos_);
            if (sep == '/') {
                auto q = parse_rational(text_.substr(start, pos_ - start));
                if (!q) throw ParseError("zero denominator", start);
                return check_range(*q, start);
            }
        }
        auto q = parse_rational(text_.substr(start, pos_ - start));
        if (!q) throw ParseError("malformed probability", start);
        return check_range(*q, start);
    }

    Prob check_range(Rational q, std::size_t at) {
        if (!is_prob(q)) throw ParseError("probability literal outside [0,1]: " + to_string(q), at);
        return q;
    }
};

}  // namespace detail

/// Parses the concrete syntax above. Throws ParseError with the offending
/// byte offset on malformed input.
inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace pre

#endif  // PRE_PARSE_HPP
