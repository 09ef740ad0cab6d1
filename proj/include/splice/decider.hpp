#pragma once

// Deciding L(s) = K for systems with a finite or regular initial set and a
// regular target K, and deciding whether a regular K is generated by some
// alphabetic flat system.

#include <optional>
#include <string>

#include "automata.hpp"
#include "system.hpp"
#include "transform.hpp"

namespace splice {

/// Automaton for the words one production of `r` makes from two words of K.
/// For a splice rule this is the union over the states q of K's automaton
/// of (words reaching q ending in α) · (K ∩ γA*δ) · (words leaving q
/// starting with β).
inline Dfa rule_image(const Dfa& k, const SplicingRule& r) {
    const Alphabet& a = k.alphabet();
    Dfa block = dfa_intersect(k, dfa_pattern(a, r.gamma, r.delta));
    if (dfa_empty(block)) return Dfa::empty(a);
    if (r.is_concat()) return dfa_concat({dfa_intersect(k, dfa_pattern(a, r.alpha, r.beta)), block});
    Dfa out = Dfa::empty(a);
    const Dfa ends_alpha = dfa_pattern(a, "", r.alpha), starts_beta = dfa_pattern(a, r.beta, "");
    for (State q = 0; q < k.size(); ++q) {
        auto [left, right] = state_languages(k, q);
        Dfa l = dfa_intersect(left, ends_alpha);
        if (dfa_empty(l)) continue;
        Dfa rr = dfa_intersect(right, starts_beta);
        if (dfa_empty(rr)) continue;
        out = dfa_union(out, dfa_concat({l, block, rr}));
    }
    return out;
}

/// Union of rule_image over the rule set.
inline Dfa splice_image(const Dfa& k, const RuleSet& rules) {
    Dfa out = Dfa::empty(k.alphabet());
    for (const auto& r : rules) out = dfa_union(out, rule_image(k, r));
    return out;
}

/// Outcome of decide_equal. On inequality `failing_inclusion` names the
/// violated condition: 0 K is not closed under conjugation (circular only),
/// 1 I ⊆ K, 2 splice image ⊆ K, 3 K \ image ⊆ I. The witness is the least
/// offending word.
struct Verdict {
    bool equal = false;
    std::optional<int> failing_inclusion;
    std::optional<Word> witness;
};

/// Decides L(s) = K. For circular systems K is read as the full
/// linearization of a circular language.
inline Verdict decide_equal(const SplicingSystem& s, const Dfa& k) {
    if (!(k.alphabet() == s.alphabet)) throw Error("target automaton alphabet differs from the system alphabet");
    if (s.initial.kind() == InitialSet::Kind::ContextFree)
        throw Error("decide_equal needs a finite or regular initial set");
    const Alphabet& a = s.alphabet;
    auto fail = [](int which, Word w) { return Verdict{false, which, std::move(w)}; };

    Dfa kk = k;
    if (s.circular()) {
        if (auto d = dfa_subset(conjugacy_closure(k), k); !d) return fail(0, *d.witness);
    }
    const bool k_has_empty = k.accepts("");
    if (s.contains_empty && !k_has_empty) return fail(1, Word{});
    if (k_has_empty && !s.contains_empty) return fail(3, Word{});
    if (k_has_empty) kk = dfa_difference(k, dfa_from_words(a, {Word{}}));

    Dfa init = s.initial.to_dfa(a);
    if (s.circular()) init = conjugacy_closure(init);
    if (auto d = dfa_subset(init, kk); !d) return fail(1, *d.witness);

    Dfa image = splice_image(kk, s.rules);
    if (s.circular()) image = conjugacy_closure(image);
    if (auto d = dfa_subset(image, kk); !d) return fail(2, *d.witness);
    if (auto d = dfa_subset(dfa_difference(kk, image), init); !d) return fail(3, *d.witness);
    return Verdict{true, std::nullopt, std::nullopt};
}

/// Every rule whose handles are empty or single letters: (|A|+1)^4 rules.
inline RuleSet all_alphabetic_rules(const Alphabet& a) {
    std::vector<Word> handles{Word{}};
    for (char c : a) handles.emplace_back(1, c);
    RuleSet out;
    for (const auto& w : handles)
        for (const auto& x : handles)
            for (const auto& y : handles)
                for (const auto& z : handles) out.insert(SplicingRule::splice(w, x, y, z));
    return out;
}

/// An alphabetic flat system with language K, or nothing when there is
/// none. The candidate keeps every alphabetic rule that does not leave K;
/// K is generable exactly when the words of K this rule set cannot
/// produce form a finite set, which then serves as the initial set.
inline std::optional<SplicingSystem> alphabetic_generability(const Dfa& k) {
    const Alphabet& a = k.alphabet();
    Dfa kk = dfa_difference(k, dfa_from_words(a, {Word{}}));
    RuleSet kept;
    for (const auto& r : all_alphabetic_rules(a))
        if (dfa_subset(rule_image(kk, r), kk)) kept.insert(r);
    Dfa rest = dfa_difference(kk, splice_image(kk, kept));
    if (!dfa_is_finite(rest)) return std::nullopt;
    // Finite: every word is shorter than the number of states.
    WordSet initial = enumerate_dfa(rest, rest.size());
    if (k.accepts("")) initial.insert(Word{});
    return SplicingSystem::make(a, InitialSet::finite(std::move(initial)), std::move(kept));
}

} // namespace splice
