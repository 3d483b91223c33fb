// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
// Text form: terms `coeff * var^e * ...` joined by + and -.
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "stochcert/poly/polynomial.hpp"

namespace stochcert::poly {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Parser {
public:
    Parser(const VarSpacePtr& space, std::string_view text) : space_(space), text_(text) {}

    Polynomial parse() {
        Polynomial::Terms terms;
        skip_ws();
        if (at_end()) {
            fail("empty polynomial");
        }
        bool first = true;
        while (!at_end()) {
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [exps, coeff] = term();
            terms[exps] += sign * coeff;
            first = false;
            skip_ws();
        }
        return Polynomial(space_, std::move(terms));
    }

private:
    std::pair<Exponents, double> term() {
        Exponents exps(space_->size(), 0);
        double coeff = 1.0;
        factor(exps, coeff);
        skip_ws();
        while (!at_end() && peek() == '*') {
            ++pos_;
            skip_ws();
            factor(exps, coeff);
            skip_ws();
        }
        return {exps, coeff};
    }

    void factor(Exponents& exps, double& coeff) {
        if (at_end()) {
            fail("unexpected end of input");
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            coeff *= number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                ++pos_;
            }
            const auto name = text_.substr(start, pos_ - start);
            const auto idx = space_->find(name);
            if (!idx) {
                fail("unknown variable '" + std::string(name) + "'");
            }
            unsigned e = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                e = exponent();
            }
            exps[*idx] += e;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    double number() {
        double v = 0.0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc()) {
            fail("malformed number");
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return v;
    }

    unsigned exponent() {
        unsigned v = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc()) {
            fail("malformed exponent");
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return v;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) +
                                    ": " + msg + " in \"" + std::string(text_) + "\"");
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    const VarSpacePtr& space_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(VarSpacePtr space, std::string_view text) {
    return Parser(space, text).parse();
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::vector<const Terms::value_type*> order;
    for (const auto& kv : terms_) {
        order.push_back(&kv);
    }
    auto total = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); };
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        const auto da = total(a->first);
        const auto db = total(b->first);
        if (da != db) {
            return da > db;
        }
        return a->first > b->first;
    });

    std::string out;
    bool first = true;
    for (const auto* kv : order) {
        const auto& [e, c] = *kv;
        const bool constant = total(e) == 0;
        if (first) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const double mag = std::abs(c);
        bool need_star = false;
        if (constant || mag != 1.0) {
            out += format_double(mag);
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (need_star) {
                out += "*";
            }
            out += space_->var(i).name;
            if (e[i] > 1) {
                out += "^" + std::to_string(e[i]);
            }
            need_star = true;
        }
        first = false;
    }
    return out;
}

}  // namespace stochcert::poly
