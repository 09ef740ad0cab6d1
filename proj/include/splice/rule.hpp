#pragma once

// Splicing rules and single productions (flat splice, concatenation,
// circular splice).

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

#include "word.hpp"

namespace splice {

enum class Usage { Splice, Concat };

/// Rule α#β$γ#δ. With concat usage it only ever glues u ∈ αA*β to v ∈ γA*δ.
struct SplicingRule {
    Word alpha, beta, gamma, delta;
    Usage usage = Usage::Splice;

    static SplicingRule splice(Word a, Word b, Word c, Word d) {
        return {std::move(a), std::move(b), std::move(c), std::move(d), Usage::Splice};
    }
    static SplicingRule concat(Word a, Word b, Word c, Word d) {
        return {std::move(a), std::move(b), std::move(c), std::move(d), Usage::Concat};
    }

    bool alphabetic() const noexcept {
        return alpha.size() <= 1 && beta.size() <= 1 && gamma.size() <= 1 && delta.size() <= 1;
    }
    /// Both α and β are nonempty, so every production is a proper insertion.
    bool pure() const noexcept { return !alpha.empty() && !beta.empty(); }
    bool is_concat() const noexcept { return usage == Usage::Concat; }

    const Word& handle(int i) const {
        switch (i) {
        case 0: return alpha;
        case 1: return beta;
        case 2: return gamma;
        default: return delta;
        }
    }
    Word& handle(int i) {
        switch (i) {
        case 0: return alpha;
        case 1: return beta;
        case 2: return gamma;
        default: return delta;
        }
    }

    /// `a#b$c#d` with `-` for an empty handle.
    std::string handles_text() const {
        auto h = [](const Word& w) { return w.empty() ? std::string("-") : w; };
        return h(alpha) + "#" + h(beta) + "$" + h(gamma) + "#" + h(delta);
    }

    /// `a#b$c#d`, or `<a#b$c#d>c` for concat usage.
    std::string to_string() const { return is_concat() ? "<" + handles_text() + ">c" : handles_text(); }

    friend auto operator<=>(const SplicingRule& a, const SplicingRule& b) {
        return std::tie(a.usage, a.alpha, a.beta, a.gamma, a.delta) <=>
               std::tie(b.usage, b.alpha, b.beta, b.gamma, b.delta);
    }
    friend bool operator==(const SplicingRule&, const SplicingRule&) = default;
};

using RuleSet = std::set<SplicingRule>;

/// v ∈ prefix·A*·suffix.
inline bool matches_pattern(std::string_view v, std::string_view prefix, std::string_view suffix) noexcept {
    return v.size() >= prefix.size() + suffix.size() && v.substr(0, prefix.size()) == prefix &&
           v.substr(v.size() - suffix.size()) == suffix;
}

/// Whether cutting `u` at `cut` is allowed by the rule's left handles.
inline bool cut_allowed(const SplicingRule& r, std::string_view u, std::size_t cut) noexcept {
    return cut >= r.alpha.size() && cut + r.beta.size() <= u.size() &&
           u.substr(cut - r.alpha.size(), r.alpha.size()) == r.alpha && u.substr(cut, r.beta.size()) == r.beta;
}

/// All words x α v β y for u = xα·βy and v ∈ γA*δ.
inline WordSet apply_splice(const SplicingRule& r, std::string_view u, std::string_view v) {
    if (r.is_concat()) throw Error("apply_splice called with concatenation rule " + r.to_string());
    WordSet out;
    if (!matches_pattern(v, r.gamma, r.delta)) return out;
    for (std::size_t cut = 0; cut <= u.size(); ++cut) {
        if (!cut_allowed(r, u, cut)) continue;
        Word w;
        w.reserve(u.size() + v.size());
        w.append(u.substr(0, cut)).append(v).append(u.substr(cut));
        out.insert(std::move(w));
    }
    return out;
}

/// uv when u ∈ αA*β and v ∈ γA*δ.
inline std::optional<Word> apply_concat(const SplicingRule& r, std::string_view u, std::string_view v) {
    if (!r.is_concat()) throw Error("apply_concat called with splicing rule " + r.to_string());
    if (!matches_pattern(u, r.alpha, r.beta) || !matches_pattern(v, r.gamma, r.delta)) return std::nullopt;
    return Word(u).append(v);
}

/// Either of the two above, as a set.
inline WordSet apply_rule(const SplicingRule& r, std::string_view u, std::string_view v) {
    if (!r.is_concat()) return apply_splice(r, u, v);
    WordSet out;
    if (auto w = apply_concat(r, u, v)) out.insert(std::move(*w));
    return out;
}

/// ⟲(u′v′) for every conjugate u′ ∈ βA*α of u and v′ ∈ γA*δ of v.
inline CircularWordSet apply_splice_circular(const SplicingRule& r, const CircularWord& u, const CircularWord& v) {
    if (r.is_concat()) throw Error("circular splicing needs a splice-usage rule, got " + r.to_string());
    CircularWordSet out;
    WordSet left, right;
    for (const auto& x : u.linearize())
        if (matches_pattern(x, r.beta, r.alpha)) left.insert(x);
    for (const auto& y : v.linearize())
        if (matches_pattern(y, r.gamma, r.delta)) right.insert(y);
    for (const auto& x : left)
        for (const auto& y : right) out.insert(CircularWord(x + y));
    return out;
}

} // namespace splice
