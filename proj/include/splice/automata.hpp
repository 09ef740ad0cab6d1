#pragma once

// Deterministic finite automata and the regular-language constructions
// used by the decision procedures and the grammar synthesis.
//
// Every Dfa is kept normalized: reachable, minimal, total, and numbered
// breadth-first from the start state in letter order. Two Dfa values over
// the same alphabet are therefore equal iff their languages are equal.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "regex.hpp"
#include "word.hpp"

namespace splice {

using State = std::size_t;

/// Nondeterministic automaton with epsilon moves; a construction scratchpad.
class Nfa {
public:
    explicit Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    State add_state(bool final = false) {
        edges_.emplace_back();
        eps_.emplace_back();
        finals_.push_back(final);
        return edges_.size() - 1;
    }

    void set_final(State q, bool f = true) { finals_[q] = f; }
    void add_start(State q) { starts_.push_back(q); }
    void add_edge(State from, char c, State to) {
        int i = alphabet_.index(c);
        if (i < 0) throw Error(std::string("letter '") + c + "' outside the automaton alphabet");
        edges_[from].emplace_back(static_cast<std::size_t>(i), to);
    }
    void add_epsilon(State from, State to) { eps_[from].push_back(to); }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<State>& starts() const noexcept { return starts_; }
    bool is_final(State q) const noexcept { return finals_[q]; }
    const std::vector<std::pair<std::size_t, State>>& edges(State q) const { return edges_[q]; }
    const std::vector<State>& epsilon_edges(State q) const { return eps_[q]; }

    /// Copies the transitions of `other` (same alphabet) and returns the state offset.
    State absorb(const Nfa& other) {
        State offset = size();
        for (State q = 0; q < other.size(); ++q) add_state(other.finals_[q]);
        for (State q = 0; q < other.size(); ++q) {
            for (auto [i, t] : other.edges_[q]) edges_[q + offset].emplace_back(i, t + offset);
            for (State t : other.eps_[q]) eps_[q + offset].push_back(t + offset);
        }
        return offset;
    }

private:
    Alphabet alphabet_;
    std::vector<std::vector<std::pair<std::size_t, State>>> edges_;
    std::vector<std::vector<State>> eps_;
    std::vector<bool> finals_;
    std::vector<State> starts_;
};

class Dfa {
public:
    /// `delta[q * |A| + i]` is the successor of `q` on the i-th letter. The
    /// table must be total; the result is normalized.
    Dfa(Alphabet alphabet, std::vector<State> delta, State start, std::vector<bool> finals)
        : alphabet_(std::move(alphabet)), delta_(std::move(delta)), finals_(std::move(finals)), start_(start) {
        if (finals_.empty() || delta_.size() != finals_.size() * alphabet_.size())
            throw Error("malformed transition table");
        for (State t : delta_)
            if (t >= finals_.size()) throw Error("transition to unknown state");
        if (start_ >= finals_.size()) throw Error("unknown start state");
        normalize();
    }

    static Dfa empty(const Alphabet& a) {
        return Dfa(a, std::vector<State>(a.size(), 0), 0, {false});
    }

    static Dfa universal(const Alphabet& a) {
        return Dfa(a, std::vector<State>(a.size(), 0), 0, {true});
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return finals_.size(); }
    State start() const noexcept { return start_; }
    bool is_final(State q) const noexcept { return finals_[q]; }
    State next(State q, std::size_t letter_index) const noexcept { return delta_[q * alphabet_.size() + letter_index]; }

    State next(State q, char c) const {
        int i = alphabet_.index(c);
        if (i < 0) throw Error(std::string("letter '") + c + "' outside the automaton alphabet");
        return next(q, static_cast<std::size_t>(i));
    }

    State run(State q, std::string_view w) const {
        for (char c : w) q = next(q, c);
        return q;
    }

    bool accepts(std::string_view w) const {
        for (char c : w)
            if (!alphabet_.contains(c)) return false;
        return finals_[run(start_, w)];
    }

    /// True for the non-final state with no way to reach a final state.
    bool is_sink(State q) const { return !coreachable()[q]; }

    /// States from which some final state is reachable.
    std::vector<bool> coreachable() const {
        std::vector<bool> live(finals_);
        bool changed = true;
        while (changed) {
            changed = false;
            for (State q = 0; q < size(); ++q) {
                if (live[q]) continue;
                for (std::size_t i = 0; i < alphabet_.size(); ++i)
                    if (live[next(q, i)]) {
                        live[q] = true;
                        changed = true;
                        break;
                    }
            }
        }
        return live;
    }

    /// Same automaton with a different start state and final set.
    Dfa reroot(State start, std::vector<bool> finals) const { return Dfa(alphabet_, delta_, start, std::move(finals)); }

    Nfa to_nfa() const {
        Nfa n(alphabet_);
        for (State q = 0; q < size(); ++q) n.add_state(finals_[q]);
        for (State q = 0; q < size(); ++q)
            for (std::size_t i = 0; i < alphabet_.size(); ++i) n.add_edge(q, alphabet_[i], next(q, i));
        n.add_start(start_);
        return n;
    }

    friend bool operator==(const Dfa& a, const Dfa& b) {
        return a.alphabet_ == b.alphabet_ && a.start_ == b.start_ && a.finals_ == b.finals_ && a.delta_ == b.delta_;
    }

private:
    void normalize() {
        const std::size_t k = alphabet_.size();
        // Keep reachable states only.
        std::vector<State> order{start_};
        std::vector<long> id(size(), -1);
        id[start_] = 0;
        for (std::size_t h = 0; h < order.size(); ++h)
            for (std::size_t i = 0; i < k; ++i) {
                State t = delta_[order[h] * k + i];
                if (id[t] < 0) {
                    id[t] = static_cast<long>(order.size());
                    order.push_back(t);
                }
            }
        // Moore refinement on the reachable part.
        const std::size_t n = order.size();
        std::vector<std::size_t> cls(n);
        for (std::size_t s = 0; s < n; ++s) cls[s] = finals_[order[s]] ? 1 : 0;
        std::size_t classes = 0;
        for (;;) {
            std::map<std::vector<std::size_t>, std::size_t> sig;
            std::vector<std::size_t> next_cls(n);
            for (std::size_t s = 0; s < n; ++s) {
                std::vector<std::size_t> key{cls[s]};
                for (std::size_t i = 0; i < k; ++i) key.push_back(cls[id[delta_[order[s] * k + i]]]);
                next_cls[s] = sig.try_emplace(std::move(key), sig.size()).first->second;
            }
            bool stable = sig.size() == classes;
            classes = sig.size();
            cls = std::move(next_cls);
            if (stable) break;
        }
        // Renumber classes breadth-first from the start.
        std::vector<State> rep(classes);
        for (std::size_t s = n; s-- > 0;) rep[cls[s]] = order[s];
        std::vector<long> num(classes, -1);
        std::vector<std::size_t> queue{cls[0]};
        num[cls[0]] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t c = cls[id[delta_[rep[queue[h]] * k + i]]];
                if (num[c] < 0) {
                    num[c] = static_cast<long>(queue.size());
                    queue.push_back(c);
                }
            }
        std::vector<State> delta(classes * k);
        std::vector<bool> finals(classes);
        for (std::size_t c = 0; c < classes; ++c) {
            State q = rep[queue[c]];
            finals[c] = finals_[q];
            for (std::size_t i = 0; i < k; ++i) delta[c * k + i] = num[cls[id[delta_[q * k + i]]]];
        }
        delta_ = std::move(delta);
        finals_ = std::move(finals);
        start_ = 0;
    }

    Alphabet alphabet_;
    std::vector<State> delta_;
    std::vector<bool> finals_;
    State start_ = 0;
};

// ---------------------------------------------------------------------------
// Basic constructions

inline Dfa determinize(const Nfa& nfa) {
    const auto& alphabet = nfa.alphabet();
    const std::size_t k = alphabet.size();
    auto closure = [&](std::vector<State> set) {
        std::vector<bool> seen(nfa.size());
        for (State q : set) seen[q] = true;
        for (std::size_t h = 0; h < set.size(); ++h)
            for (State t : nfa.epsilon_edges(set[h]))
                if (!seen[t]) {
                    seen[t] = true;
                    set.push_back(t);
                }
        std::sort(set.begin(), set.end());
        return set;
    };
    std::map<std::vector<State>, State> index;
    std::vector<std::vector<State>> subsets;
    auto intern = [&](std::vector<State> s) {
        auto [it, fresh] = index.try_emplace(s, subsets.size());
        if (fresh) subsets.push_back(std::move(s));
        return it->second;
    };
    intern(closure(nfa.starts()));
    std::vector<State> delta;
    std::vector<bool> finals;
    for (std::size_t h = 0; h < subsets.size(); ++h) {
        std::vector<std::vector<State>> succ(k);
        bool final = false;
        for (State q : subsets[h]) {
            final = final || nfa.is_final(q);
            for (auto [i, t] : nfa.edges(q)) succ[i].push_back(t);
        }
        finals.push_back(final);
        for (std::size_t i = 0; i < k; ++i) {
            auto& s = succ[i];
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            delta.push_back(intern(closure(std::move(s))));
        }
    }
    return Dfa(alphabet, std::move(delta), 0, std::move(finals));
}

namespace detail {

// Thompson construction; returns (entry, exit).
inline std::pair<State, State> thompson(Nfa& n, const Regex& r) {
    State in = n.add_state(), out = n.add_state();
    switch (r.kind()) {
    case Regex::Kind::Empty: break;
    case Regex::Kind::Epsilon: n.add_epsilon(in, out); break;
    case Regex::Kind::Letter: n.add_edge(in, r.letter(), out); break;
    case Regex::Kind::Union:
        for (const auto& c : r.children()) {
            auto [a, b] = thompson(n, c);
            n.add_epsilon(in, a);
            n.add_epsilon(b, out);
        }
        break;
    case Regex::Kind::Concat: {
        State cur = in;
        for (const auto& c : r.children()) {
            auto [a, b] = thompson(n, c);
            n.add_epsilon(cur, a);
            cur = b;
        }
        n.add_epsilon(cur, out);
        break;
    }
    case Regex::Kind::Star:
    case Regex::Kind::Plus:
    case Regex::Kind::Optional: {
        auto [a, b] = thompson(n, r.children()[0]);
        n.add_epsilon(in, a);
        n.add_epsilon(b, out);
        if (r.kind() != Regex::Kind::Plus) n.add_epsilon(in, out);
        if (r.kind() != Regex::Kind::Optional) n.add_epsilon(b, a);
        break;
    }
    }
    return {in, out};
}

inline void require_same_alphabet(const Dfa& a, const Dfa& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw Error("alphabet mismatch: {" + a.alphabet().letters() + "} vs {" + b.alphabet().letters() + "}");
}

template <class Op>
Dfa product(const Dfa& a, const Dfa& b, Op op) {
    require_same_alphabet(a, b);
    const std::size_t k = a.alphabet().size();
    std::vector<State> delta(a.size() * b.size() * k);
    std::vector<bool> finals(a.size() * b.size());
    for (State p = 0; p < a.size(); ++p)
        for (State q = 0; q < b.size(); ++q) {
            State s = p * b.size() + q;
            finals[s] = op(a.is_final(p), b.is_final(q));
            for (std::size_t i = 0; i < k; ++i) delta[s * k + i] = a.next(p, i) * b.size() + b.next(q, i);
        }
    return Dfa(a.alphabet(), std::move(delta), a.start() * b.size() + b.start(), std::move(finals));
}

} // namespace detail

inline Dfa regex_to_dfa(const Regex& r, const Alphabet& alphabet) {
    for (char c : r.letters()) alphabet.require(std::string(1, c), "regex");
    Nfa n(alphabet);
    auto [in, out] = detail::thompson(n, r);
    n.add_start(in);
    n.set_final(out);
    return determinize(n);
}

inline Dfa regex_to_dfa(std::string_view text, const Alphabet& alphabet) {
    return regex_to_dfa(parse_regex(text), alphabet);
}

/// Automaton accepting exactly the given (finite) set of words.
inline Dfa dfa_from_words(const Alphabet& alphabet, const WordSet& words) {
    Nfa n(alphabet);
    State root = n.add_state();
    n.add_start(root);
    for (const auto& w : words) {
        alphabet.require(w);
        State cur = root;
        for (char c : w) {
            State t = n.add_state();
            n.add_edge(cur, c, t);
            cur = t;
        }
        n.set_final(cur);
    }
    return determinize(n);
}

/// Automaton for `prefix A* suffix`, i.e. words of length at least
/// |prefix| + |suffix| starting with `prefix` and ending with `suffix`.
inline Dfa dfa_pattern(const Alphabet& alphabet, std::string_view prefix, std::string_view suffix) {
    alphabet.require(prefix, "handle");
    alphabet.require(suffix, "handle");
    std::vector<Regex> parts{Regex::word(prefix)};
    std::vector<Regex> any;
    for (char c : alphabet) any.push_back(Regex::letter(c));
    parts.push_back(Regex::star(Regex::union_of(std::move(any))));
    parts.push_back(Regex::word(suffix));
    return regex_to_dfa(Regex::concat(std::move(parts)), alphabet);
}

inline Dfa dfa_intersect(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x && y; });
}
inline Dfa dfa_union(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x || y; });
}
inline Dfa dfa_difference(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x && !y; });
}
inline Dfa dfa_complement(const Dfa& a) {
    std::vector<State> delta;
    std::vector<bool> finals;
    for (State q = 0; q < a.size(); ++q) {
        finals.push_back(!a.is_final(q));
        for (std::size_t i = 0; i < a.alphabet().size(); ++i) delta.push_back(a.next(q, i));
    }
    return Dfa(a.alphabet(), std::move(delta), a.start(), std::move(finals));
}

/// Language concatenation, by epsilon gluing and determinization.
inline Dfa dfa_concat(const std::vector<Dfa>& parts) {
    if (parts.empty()) throw Error("dfa_concat needs at least one operand");
    Nfa n(parts.front().alphabet());
    std::vector<State> prev_finals;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (p) detail::require_same_alphabet(parts[0], parts[p]);
        Nfa piece = parts[p].to_nfa();
        State off = n.absorb(piece);
        State entry = parts[p].start() + off;
        if (p == 0) n.add_start(entry);
        for (State q : prev_finals) n.add_epsilon(q, entry);
        prev_finals.clear();
        for (State q = 0; q < piece.size(); ++q)
            if (piece.is_final(q)) {
                prev_finals.push_back(q + off);
                if (p + 1 < parts.size()) n.set_final(q + off, false);
            }
    }
    return determinize(n);
}

// ---------------------------------------------------------------------------
// Decisions with witnesses

/// A yes/no answer with a shortest (length-lex least) counterexample when
/// the answer warrants one.
struct Decision {
    bool holds = false;
    std::optional<Word> witness;
    explicit operator bool() const noexcept { return holds; }
};

/// Length-lex least accepted word, if any.
inline std::optional<Word> shortest_word(const Dfa& d) {
    const std::size_t k = d.alphabet().size();
    std::vector<long> parent(d.size(), -1);
    std::vector<char> via(d.size(), 0);
    std::vector<bool> seen(d.size(), false);
    std::vector<State> queue{d.start()};
    seen[d.start()] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        State q = queue[h];
        if (d.is_final(q)) {
            Word w;
            for (State s = q; parent[s] >= 0; s = static_cast<State>(parent[s])) w.push_back(via[s]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t i = 0; i < k; ++i) {
            State t = d.next(q, i);
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = static_cast<long>(q);
                via[t] = d.alphabet()[i];
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

/// `holds` when L(d) is empty; otherwise the witness is the least accepted word.
inline Decision dfa_empty(const Dfa& d) {
    auto w = shortest_word(d);
    return {!w.has_value(), w};
}

/// `holds` when L(a) ⊆ L(b); otherwise the witness lies in L(a) \ L(b).
inline Decision dfa_subset(const Dfa& a, const Dfa& b) {
    auto w = shortest_word(dfa_difference(a, b));
    return {!w.has_value(), w};
}

/// `holds` when the languages coincide; otherwise the witness lies in the
/// symmetric difference.
inline Decision dfa_equivalent(const Dfa& a, const Dfa& b) {
    auto w = shortest_word(detail::product(a, b, [](bool x, bool y) { return x != y; }));
    return {!w.has_value(), w};
}

/// prefix · loop* · suffix is contained in the language.
struct Pump {
    Word prefix, loop, suffix;
};

struct Finiteness {
    bool finite = true;
    std::optional<Pump> pump;
    explicit operator bool() const noexcept { return finite; }
};

inline Finiteness dfa_is_finite(const Dfa& d) {
    const std::size_t k = d.alphabet().size();
    auto live = d.coreachable();
    // Shortest words between states, restricted to live states.
    auto bfs = [&](State from, const std::function<bool(State, std::size_t)>& target) -> std::optional<Word> {
        std::vector<long> parent(d.size(), -1);
        std::vector<char> via(d.size(), 0);
        std::vector<bool> seen(d.size(), false);
        std::deque<std::pair<State, std::size_t>> queue{{from, 0}};
        std::vector<State> order;
        seen[from] = true;
        // Depth-0 target check is done by the caller through `target(q, depth)`.
        while (!queue.empty()) {
            auto [q, depth] = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < k; ++i) {
                State t = d.next(q, i);
                if (!live[t]) continue;
                if (target(t, depth + 1)) {
                    Word w(1, d.alphabet()[i]);
                    for (State s = q; parent[s] >= 0; s = static_cast<State>(parent[s])) w.push_back(via[s]);
                    std::reverse(w.begin(), w.end());
                    return w;
                }
                if (!seen[t]) {
                    seen[t] = true;
                    parent[t] = static_cast<long>(q);
                    via[t] = d.alphabet()[i];
                    queue.emplace_back(t, depth + 1);
                }
            }
        }
        return std::nullopt;
    };
    std::optional<Pump> best;
    auto better = [](const Pump& a, const Pump& b) {
        Word x = a.prefix + a.loop + a.suffix, y = b.prefix + b.loop + b.suffix;
        return LengthLex{}(x, y);
    };
    for (State q = 0; q < d.size(); ++q) {
        if (!live[q]) continue;
        auto loop = bfs(q, [q](State t, std::size_t) { return t == q; });
        if (!loop) continue;
        Pump p;
        p.prefix = *shortest_word(d.reroot(d.start(), [&] {
            std::vector<bool> f(d.size(), false);
            f[q] = true;
            return f;
        }()));
        p.loop = *loop;
        if (!d.is_final(q)) {
            std::vector<bool> fin(d.size());
            for (State s = 0; s < d.size(); ++s) fin[s] = d.is_final(s);
            p.suffix = *shortest_word(d.reroot(q, fin));
        }
        if (!best || better(p, *best)) best = p;
    }
    return {!best.has_value(), best};
}

// ---------------------------------------------------------------------------
// Languages attached to states

struct StateLanguages {
    Dfa left;   ///< words leading from the start to the state
    Dfa right;  ///< words leading from the state to a final state
};

inline StateLanguages state_languages(const Dfa& d, State q) {
    if (q >= d.size()) throw Error("unknown state " + std::to_string(q));
    std::vector<bool> only_q(d.size(), false);
    only_q[q] = true;
    std::vector<bool> finals(d.size());
    for (State s = 0; s < d.size(); ++s) finals[s] = d.is_final(s);
    return {d.reroot(d.start(), std::move(only_q)), d.reroot(q, std::move(finals))};
}

/// { yx : xy ∈ L(d) } as the union over live states p of right(p)·left(p).
/// Determinizing the pieces separately keeps every intermediate automaton
/// minimal; a single guess-the-state automaton has quadratically many
/// states and its subsets grow out of hand on images of a few hundred
/// states.
inline Dfa conjugacy_closure(const Dfa& d) {
    Dfa out = Dfa::empty(d.alphabet());
    const auto live = d.coreachable();
    for (State p = 0; p < d.size(); ++p) {
        if (!live[p]) continue;
        auto [left, right] = state_languages(d, p);
        out = dfa_union(out, dfa_concat({right, left}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Accepted words of length at most `n`, in length-lex order.
inline WordSet enumerate_dfa(const Dfa& d, std::size_t n) {
    const std::size_t k = d.alphabet().size();
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    // Distance to the nearest final state.
    std::vector<std::size_t> dist(d.size(), inf);
    for (State q = 0; q < d.size(); ++q)
        if (d.is_final(q)) dist[q] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (State q = 0; q < d.size(); ++q)
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t t = dist[d.next(q, i)];
                if (t != inf && t + 1 < dist[q]) {
                    dist[q] = t + 1;
                    changed = true;
                }
            }
    }
    WordSet out;
    Word cur;
    std::function<void(State)> walk = [&](State q) {
        if (dist[q] == inf || cur.size() + dist[q] > n) return;
        if (d.is_final(q)) out.insert(cur);
        for (std::size_t i = 0; i < k; ++i) {
            cur.push_back(d.alphabet()[i]);
            walk(d.next(q, i));
            cur.pop_back();
        }
    };
    walk(d.start());
    return out;
}

} // namespace splice
