#pragma once

// Initial sets and splicing systems.

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "automata.hpp"
#include "cfg.hpp"
#include "rule.hpp"
#include "word.hpp"

namespace splice {

/// A finite set of words, a regular language, or a context-free language.
class InitialSet {
public:
    enum class Kind { Finite, Regular, ContextFree };

    InitialSet() = default;
    static InitialSet finite(WordSet words) { return InitialSet(std::move(words)); }
    static InitialSet regular(Dfa d) { return InitialSet(std::move(d)); }
    static InitialSet context_free(Cfg g) { return InitialSet(std::move(g)); }

    Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    const WordSet& words() const { return std::get<WordSet>(data_); }
    const Dfa& dfa() const { return std::get<Dfa>(data_); }
    const Cfg& grammar() const { return std::get<Cfg>(data_); }

    bool contains(std::string_view w) const {
        switch (kind()) {
        case Kind::Finite: return words().count(Word(w)) > 0;
        case Kind::Regular: return dfa().accepts(w);
        case Kind::ContextFree: {
            if (w.empty()) return cfg_nullable(grammar());
            std::string letters(w);
            for (const auto& t : grammar().terminals())
                if (t.size() == 1) letters += t;
            std::sort(letters.begin(), letters.end());
            letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
            Alphabet a(letters);
            return !cfg_empty(bar_hillel(grammar(), dfa_from_words(a, {Word(w)})));
        }
        }
        return false;
    }

    /// Members of length at most `n`.
    WordSet enumerate(std::size_t n) const {
        switch (kind()) {
        case Kind::Finite: return truncate(words(), n);
        case Kind::Regular: return enumerate_dfa(dfa(), n);
        case Kind::ContextFree: return enumerate_cfg(grammar(), n);
        }
        return {};
    }

    bool has_empty() const { return contains(""); }

    /// The same set minus the empty word.
    InitialSet without_empty() const {
        switch (kind()) {
        case Kind::Finite: {
            WordSet w = words();
            w.erase(Word{});
            return finite(std::move(w));
        }
        case Kind::Regular: {
            const Alphabet& a = dfa().alphabet();
            return regular(dfa_difference(dfa(), dfa_from_words(a, {Word{}})));
        }
        case Kind::ContextFree: return context_free(cfg_trim(detail::remove_epsilon(grammar())));
        }
        return *this;
    }

    /// Automaton for a finite or regular set.
    Dfa to_dfa(const Alphabet& a) const {
        switch (kind()) {
        case Kind::Finite: return dfa_from_words(a, words());
        case Kind::Regular:
            if (!(dfa().alphabet() == a)) throw Error("initial automaton alphabet differs from the system alphabet");
            return dfa();
        case Kind::ContextFree: break;
        }
        throw Error("a context-free initial set has no finite automaton");
    }

    Cfg to_cfg() const {
        switch (kind()) {
        case Kind::Finite: return cfg_from_words(words());
        case Kind::Regular: return cfg_from_dfa(dfa());
        case Kind::ContextFree: return grammar();
        }
        return Cfg{};
    }

    /// Every linear word whose conjugacy class meets the set.
    InitialSet linearized() const {
        switch (kind()) {
        case Kind::Finite: {
            WordSet out;
            for (const auto& w : words()) out.merge(conjugates(w));
            return finite(std::move(out));
        }
        case Kind::Regular: return regular(conjugacy_closure(dfa()));
        case Kind::ContextFree: break;
        }
        throw Error("full linearization of a context-free circular initial set is not supported");
    }

private:
    explicit InitialSet(WordSet w) : data_(std::move(w)) {}
    explicit InitialSet(Dfa d) : data_(std::move(d)) {}
    explicit InitialSet(Cfg g) : data_(std::move(g)) {}

    std::variant<WordSet, Dfa, Cfg> data_;
};

enum class Mode { Flat, Circular };

struct SplicingSystem {
    Alphabet alphabet;
    InitialSet initial;
    RuleSet rules;
    Mode mode = Mode::Flat;
    /// The empty word belonged to the initial set; it is kept out of
    /// `initial` and only affects membership of ε itself.
    bool contains_empty = false;

    bool circular() const noexcept { return mode == Mode::Circular; }

    bool alphabetic() const {
        return std::all_of(rules.begin(), rules.end(), [](const SplicingRule& r) { return r.alphabetic(); });
    }

    /// Builds a validated system, moving ε out of the initial set.
    static SplicingSystem make(Alphabet a, InitialSet initial, RuleSet rules, Mode mode = Mode::Flat) {
        SplicingSystem s;
        s.alphabet = std::move(a);
        s.mode = mode;
        s.rules = std::move(rules);
        s.contains_empty = initial.has_empty();
        s.initial = s.contains_empty ? initial.without_empty() : std::move(initial);
        s.validate();
        return s;
    }

    void validate() const {
        for (const auto& r : rules) {
            for (int i = 0; i < 4; ++i) alphabet.require(r.handle(i), "handle");
            if (circular() && r.is_concat()) throw Error("circular systems only take splice rules, got " + r.to_string());
        }
        switch (initial.kind()) {
        case InitialSet::Kind::Finite:
            for (const auto& w : initial.words()) {
                alphabet.require(w, "initial word");
                if (w.empty()) throw Error("the empty word must not be stored in the initial set");
            }
            break;
        case InitialSet::Kind::Regular:
            if (!(initial.dfa().alphabet() == alphabet)) throw Error("initial automaton alphabet differs from the system alphabet");
            break;
        case InitialSet::Kind::ContextFree:
            for (const auto& t : initial.grammar().terminals())
                if (t.size() != 1 || !alphabet.contains(t[0]))
                    throw Error("initial grammar terminal '" + t + "' is not a letter of the alphabet");
            break;
        }
        if (circular() && contains_empty) throw Error("the empty circular word is not allowed in a circular system");
    }
};

} // namespace splice
