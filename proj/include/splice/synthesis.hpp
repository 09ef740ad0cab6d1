#pragma once

// Context-free grammars for the languages of alphabetic systems with
// context-free initial sets.

#include <map>
#include <set>
#include <string>
#include <utility>

#include "cfg.hpp"
#include "generalized.hpp"
#include "system.hpp"
#include "transform.hpp"

namespace splice {

/// The initial set cut by first and last letter: words[(a, b)] holds the
/// words of length at least two in aA*b, singles the one-letter words.
struct SplitInitial {
    std::map<std::pair<char, char>, Cfg> words;
    std::set<char> singles;
};

inline SplitInitial split_first_last(const InitialSet& initial, const Alphabet& a) {
    SplitInitial out;
    for (char x : a) {
        if (initial.contains(std::string(1, x))) out.singles.insert(x);
        for (char y : a) {
            const std::string first(1, x), last(1, y);
            Cfg part;
            switch (initial.kind()) {
            case InitialSet::Kind::Finite: {
                WordSet ws;
                for (const auto& w : initial.words())
                    if (w.size() >= 2 && matches_pattern(w, first, last)) ws.insert(w);
                if (ws.empty()) continue;
                part = cfg_from_words(ws);
                break;
            }
            case InitialSet::Kind::Regular: {
                Dfa d = dfa_intersect(initial.dfa(), dfa_pattern(a, first, last));
                if (dfa_empty(d)) continue;
                part = cfg_from_dfa(d);
                break;
            }
            case InitialSet::Kind::ContextFree:
                part = bar_hillel(initial.grammar(), dfa_pattern(a, first, last));
                if (cfg_empty(part)) continue;
                break;
            }
            out.words.emplace(std::make_pair(x, y), std::move(part));
        }
    }
    return out;
}

namespace detail {

inline std::string pair_var(const char* base, char a, char b) { return std::string(base) + "_" + a + "_" + b; }
inline std::string letter_var(char a) { return std::string("S_") + a; }

inline void require_pure_complete(const SplicingSystem& s) {
    if (s.circular()) throw Error("expected a flat system");
    for (const auto& r : s.rules)
        if (r.is_concat() || !r.pure() || !r.alphabetic())
            throw Error("expected pure alphabetic splice rules, got " + r.to_string());
    if (!is_complete(s.rules, s.alphabet)) throw Error("the rule set is not complete");
}

/// Right-hand sides of the marker variables M_a_b as lists of outer names.
inline std::vector<std::pair<std::string, std::vector<std::string>>> marker_alternatives(const SplicingSystem& s,
                                                                                        const SplitInitial& split) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& r : s.rules) {
        const char a = r.alpha[0], b = r.beta[0];
        const std::string m = pair_var("M", a, b);
        if (!r.gamma.empty() && !r.delta.empty()) {
            const char c = r.gamma[0], d = r.delta[0];
            if (split.words.count({c, d}))
                out.push_back({m, {pair_var("M", a, c), pair_var("W", c, d), pair_var("M", d, b)}});
        } else if (r.gamma.size() + r.delta.size() == 1) {
            const char c = r.gamma.empty() ? r.delta[0] : r.gamma[0];
            if (split.singles.count(c)) out.push_back({m, {pair_var("M", a, c), letter_var(c), pair_var("M", c, b)}});
        }
    }
    return out;
}

} // namespace detail

/// Grammar for the language of a flat system whose rules are all pure,
/// alphabetic and complete. Each word of I ∩ aA*b is expanded into its
/// insertion image, whose seam markers become variables M_x_y generating
/// everything that can be inserted between x and y.
inline Cfg pure_grammar(const SplicingSystem& s) {
    detail::require_pure_complete(s);
    SplitInitial split = split_first_last(s.initial, s.alphabet);
    Cfg skeleton("S");
    std::map<std::string, Cfg> sigma;
    std::map<std::string, std::string> markers;
    for (const auto& [ab, part] : split.words) {
        const std::string w = detail::pair_var("W", ab.first, ab.second);
        const std::string pseudo = detail::pair_var("WI", ab.first, ab.second);
        skeleton.add_rule("S", {Symbol::var(w)});
        skeleton.add_rule(w, {Symbol::term(pseudo)});
        sigma.emplace(pseudo, ins_image(part));
    }
    for (char c : split.singles) {
        skeleton.add_rule("S", {Symbol::var(detail::letter_var(c))});
        skeleton.add_rule(detail::letter_var(c), {Symbol::term(std::string(1, c))});
    }
    for (const auto& [m, rhs] : detail::marker_alternatives(s, split)) {
        Sentence sent;
        for (const auto& v : rhs) sent.push_back(Symbol::var(v));
        skeleton.add_rule(m, std::move(sent));
    }
    for (char x : s.alphabet)
        for (char y : s.alphabet) {
            skeleton.add_rule(detail::pair_var("M", x, y), {});
            markers.emplace(marker_name(x, y), detail::pair_var("M", x, y));
        }
    return cfg_trim(promote_terminals(substitute(skeleton, sigma), markers));
}

/// The same language as a generalized grammar, for elimination.
inline GeneralizedCfg pure_generalized_grammar(const SplicingSystem& s) {
    detail::require_pure_complete(s);
    SplitInitial split = split_first_last(s.initial, s.alphabet);
    GeneralizedCfg g;
    g.start = "S";
    g.variables.push_back("S");
    for (char c : s.alphabet) g.terminals.insert(std::string(1, c));
    std::map<std::string, std::string> markers;
    for (char x : s.alphabet)
        for (char y : s.alphabet) markers.emplace(marker_name(x, y), detail::pair_var("M", x, y));

    Cfg top("R");
    for (const auto& [ab, part] : split.words) {
        const std::string w = detail::pair_var("W", ab.first, ab.second);
        g.variables.push_back(w);
        top.add_rule("R", {Symbol::term(w)});
        Cfg image = ins_image(part);
        // Marker terminals are renamed to the outer marker variable names.
        Cfg renamed(image.start());
        for (const auto& r : image.rules()) {
            Sentence rhs;
            for (const auto& sym : r.rhs) {
                auto it = sym.variable ? markers.end() : markers.find(sym.name);
                rhs.push_back(it == markers.end() ? sym : Symbol::term(it->second));
            }
            renamed.add_rule(r.lhs, std::move(rhs));
        }
        g.rhs.emplace(w, std::move(renamed));
    }
    for (char c : split.singles) {
        const std::string v = detail::letter_var(c);
        g.variables.push_back(v);
        top.add_rule("R", {Symbol::term(v)});
        Cfg one("R");
        one.add_word_rule("R", std::string(1, c));
        g.rhs.emplace(v, std::move(one));
    }
    g.rhs.emplace("S", std::move(top));
    std::map<std::string, Cfg> marker_rhs;
    for (char x : s.alphabet)
        for (char y : s.alphabet) {
            const std::string m = detail::pair_var("M", x, y);
            g.variables.push_back(m);
            marker_rhs.emplace(m, Cfg("R")).first->second.add_rule("R", {});
        }
    for (const auto& [m, rhs] : detail::marker_alternatives(s, split)) {
        Sentence sent;
        for (const auto& v : rhs) sent.push_back(Symbol::term(v));
        marker_rhs.at(m).add_rule("R", std::move(sent));
    }
    for (auto& [m, h] : marker_rhs) g.rhs.emplace(m, std::move(h));
    return g;
}

/// pure_grammar computed by eliminating the variables of the generalized
/// grammar one at a time.
inline Cfg pure_grammar_by_elimination(const SplicingSystem& s) { return kral_eliminate(pure_generalized_grammar(s)); }

/// Grammar for the language of a flat system whose rules are all
/// alphabetic, complete concatenation rules.
inline Cfg concat_grammar(const SplicingSystem& s) {
    if (s.circular()) throw Error("expected a flat system");
    for (const auto& r : s.rules)
        if (!r.is_concat() || !r.alphabetic()) throw Error("expected alphabetic concatenation rules, got " + r.to_string());
    if (!is_complete(s.rules, s.alphabet)) throw Error("the rule set is not complete");
    SplitInitial split = split_first_last(s.initial, s.alphabet);
    using detail::letter_var;
    using detail::pair_var;
    Cfg skeleton("S");
    std::map<std::string, Cfg> sigma;
    for (char a : s.alphabet) {
        for (char b : s.alphabet) skeleton.add_rule("S", {Symbol::var(pair_var("W", a, b))});
        skeleton.add_rule("S", {Symbol::var(letter_var(a))});
    }
    for (const auto& [ab, part] : split.words) {
        const std::string pseudo = pair_var("WI", ab.first, ab.second);
        skeleton.add_rule(pair_var("W", ab.first, ab.second), {Symbol::term(pseudo)});
        sigma.emplace(pseudo, part);
    }
    for (char c : split.singles) skeleton.add_rule(letter_var(c), {Symbol::term(std::string(1, c))});
    auto W = [&](char x, char y) { return Symbol::var(pair_var("W", x, y)); };
    auto L = [&](char x) { return Symbol::var(letter_var(x)); };
    for (const auto& r : s.rules) {
        const Word &al = r.alpha, &be = r.beta, &ga = r.gamma, &de = r.delta;
        const std::size_t left_len = al.size() + be.size(), right_len = ga.size() + de.size();
        // Left operand: W_{α,β} when both handles are letters, S_x when
        // exactly one is (the completed set also supplies the W variants).
        if (left_len == 2 && right_len == 2) {
            skeleton.add_rule(pair_var("W", al[0], de[0]), {W(al[0], be[0]), W(ga[0], de[0])});
        } else if (left_len == 1 && right_len == 2) {
            const char x = al.empty() ? be[0] : al[0];
            skeleton.add_rule(pair_var("W", x, de[0]), {L(x), W(ga[0], de[0])});
        } else if (left_len == 2 && right_len == 1) {
            const char y = ga.empty() ? de[0] : ga[0];
            skeleton.add_rule(pair_var("W", al[0], y), {W(al[0], be[0]), L(y)});
        } else if (left_len == 1 && right_len == 1) {
            const char x = al.empty() ? be[0] : al[0];
            const char y = ga.empty() ? de[0] : ga[0];
            skeleton.add_rule(pair_var("W", x, y), {L(x), L(y)});
        }
    }
    return cfg_trim(substitute(skeleton, sigma));
}

/// Grammar for the language of an alphabetic system with a context-free
/// (or simpler) initial set. Circular systems yield the full
/// linearization of their language.
inline Cfg synthesize(const SplicingSystem& s) {
    if (!s.alphabetic()) throw Error("synthesis needs an alphabetic system");
    SplicingSystem flat = s.circular() ? circular_to_flat(s) : s;
    SplicingSystem het = to_heterogeneous(complete(flat));
    RuleSet concat_rules, pure_rules;
    for (const auto& r : het.rules) (r.is_concat() ? concat_rules : pure_rules).insert(r);

    SplicingSystem first = het;
    first.rules = std::move(concat_rules);
    Cfg l1 = concat_grammar(first);

    SplicingSystem second;
    second.alphabet = het.alphabet;
    second.initial = InitialSet::context_free(l1);
    second.rules = std::move(pure_rules);
    Cfg g = pure_grammar(second);
    if (!flat.contains_empty) return cfg_canonical_names(contract_unit_chains(g));
    std::string start = "S0";
    while (g.has_variable(start)) start += "0";
    Cfg out(start);
    out.add_rule(start, {Symbol::var(g.start())});
    out.add_rule(start, {});
    for (const auto& r : g.rules()) out.add_rule(r.lhs, r.rhs);
    return cfg_canonical_names(contract_unit_chains(out));
}

} // namespace splice
