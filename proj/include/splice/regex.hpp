#pragma once

// Regular expression syntax: letters, `|`, juxtaposition, `*`, `+`, `?`,
// parentheses and `_` for the empty word. An empty pattern denotes the
// empty language.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "word.hpp"

namespace splice {

class Regex {
public:
    enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star, Plus, Optional };

    static Regex empty() { return Regex(Kind::Empty); }
    static Regex epsilon() { return Regex(Kind::Epsilon); }
    static Regex letter(char c) {
        Regex r(Kind::Letter);
        r.node_->letter = c;
        return r;
    }
    static Regex union_of(std::vector<Regex> parts) { return make(Kind::Union, std::move(parts)); }
    static Regex concat(std::vector<Regex> parts) { return make(Kind::Concat, std::move(parts)); }
    static Regex star(Regex r) { return make(Kind::Star, {std::move(r)}); }
    static Regex plus(Regex r) { return make(Kind::Plus, {std::move(r)}); }
    static Regex optional(Regex r) { return make(Kind::Optional, {std::move(r)}); }

    /// Matches the word `w` exactly.
    static Regex word(std::string_view w) {
        if (w.empty()) return epsilon();
        std::vector<Regex> parts;
        for (char c : w) parts.push_back(letter(c));
        return parts.size() == 1 ? parts.front() : concat(std::move(parts));
    }

    Kind kind() const noexcept { return node_->kind; }
    char letter() const noexcept { return node_->letter; }
    const std::vector<Regex>& children() const noexcept { return node_->children; }

    /// Letters used anywhere in the expression.
    std::string letters() const {
        std::string out;
        collect(out);
        return out;
    }

    std::string to_string() const {
        switch (kind()) {
        case Kind::Empty: return "";
        case Kind::Epsilon: return "_";
        case Kind::Letter: return std::string(1, letter());
        case Kind::Union: {
            std::string s;
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i) s += '|';
                s += children()[i].to_string();
            }
            return s;
        }
        case Kind::Concat: {
            std::string s;
            for (const auto& c : children()) s += c.wrapped(c.kind() == Kind::Union);
            return s;
        }
        case Kind::Star: return children()[0].wrapped(!children()[0].atomic()) + "*";
        case Kind::Plus: return children()[0].wrapped(!children()[0].atomic()) + "+";
        case Kind::Optional: return children()[0].wrapped(!children()[0].atomic()) + "?";
        }
        return {};
    }

private:
    struct Node {
        Kind kind;
        char letter = 0;
        std::vector<Regex> children;
    };

    explicit Regex(Kind k) : node_(std::make_shared<Node>(Node{k, 0, {}})) {}

    static Regex make(Kind k, std::vector<Regex> parts) {
        Regex r(k);
        r.node_->children = std::move(parts);
        return r;
    }

    bool atomic() const noexcept { return kind() == Kind::Letter || kind() == Kind::Epsilon; }

    std::string wrapped(bool paren) const {
        auto s = to_string();
        return paren ? "(" + s + ")" : s;
    }

    void collect(std::string& out) const {
        if (kind() == Kind::Letter && out.find(letter()) == std::string::npos) out.push_back(letter());
        for (const auto& c : children()) c.collect(out);
    }

    std::shared_ptr<Node> node_;
};

namespace detail {

class RegexParser {
public:
    explicit RegexParser(std::string_view text) : text_(text) {}

    Regex parse() {
        skip();
        if (pos_ == text_.size()) return Regex::empty();
        Regex r = alternation();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return r;
    }

private:
    Regex alternation() {
        std::vector<Regex> parts{sequence()};
        while (peek() == '|') {
            ++pos_;
            parts.push_back(sequence());
        }
        return parts.size() == 1 ? parts.front() : Regex::union_of(std::move(parts));
    }

    Regex sequence() {
        std::vector<Regex> parts;
        for (;;) {
            char c = peek();
            if (c == '\0' || c == '|' || c == ')') break;
            parts.push_back(postfix());
        }
        if (parts.empty()) fail("empty alternative");
        return parts.size() == 1 ? parts.front() : Regex::concat(std::move(parts));
    }

    Regex postfix() {
        Regex r = atom();
        for (;;) {
            char c = peek();
            if (c == '*') r = Regex::star(r);
            else if (c == '+') r = Regex::plus(r);
            else if (c == '?') r = Regex::optional(r);
            else break;
            ++pos_;
        }
        return r;
    }

    Regex atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Regex r = alternation();
            if (peek() != ')') fail("missing ')'");
            ++pos_;
            return r;
        }
        if (c == '_') {
            ++pos_;
            return Regex::epsilon();
        }
        if (c == '*' || c == '+' || c == '?') fail("dangling operator '" + std::string(1, c) + "'");
        if (is_reserved_letter(c)) fail("reserved character '" + std::string(1, c) + "'");
        ++pos_;
        return Regex::letter(c);
    }

    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("regex '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Regex parse_regex(std::string_view text) { return detail::RegexParser(text).parse(); }

} // namespace splice
