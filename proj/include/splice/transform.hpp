#pragma once

// System-to-system rewrites: completion, heterogeneous splitting,
// circular-to-flat expansion, and reordering production sequences so that
// concatenations come first.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "production.hpp"
#include "system.hpp"

namespace splice {

/// Adds every rule obtained by replacing some or all empty handles by
/// letters. Usage tags are preserved.
inline RuleSet complete(const RuleSet& rules, const Alphabet& a) {
    RuleSet out;
    for (const auto& r : rules) {
        if (!r.alphabetic()) throw Error("completion needs alphabetic rules, got " + r.to_string());
        std::vector<SplicingRule> partial{r};
        for (int h = 0; h < 4; ++h) {
            if (!r.handle(h).empty()) continue;
            std::vector<SplicingRule> next;
            for (const auto& p : partial) {
                next.push_back(p);
                for (char c : a) {
                    SplicingRule q = p;
                    q.handle(h) = std::string(1, c);
                    next.push_back(std::move(q));
                }
            }
            partial = std::move(next);
        }
        out.insert(partial.begin(), partial.end());
    }
    return out;
}

inline bool is_complete(const RuleSet& rules, const Alphabet& a) { return complete(rules, a) == rules; }

/// The system with its rule set completed.
inline SplicingSystem complete(const SplicingSystem& s) {
    SplicingSystem out = s;
    out.rules = complete(s.rules, s.alphabet);
    return out;
}

/// Keeps the pure splice rules and turns the concatenation uses of the
/// others into concatenation rules: α#-$γ#δ gives <-#α$γ#δ>c and -#β$γ#δ
/// gives <γ#δ$β#->c. Existing concatenation rules are kept; the
/// concatenation part is completed at the end.
inline SplicingSystem to_heterogeneous(const SplicingSystem& s) {
    if (s.circular()) throw Error("to_heterogeneous expects a flat system");
    if (!s.alphabetic()) throw Error("to_heterogeneous expects an alphabetic system");
    if (!is_complete(s.rules, s.alphabet)) throw Error("to_heterogeneous expects a complete rule set");
    RuleSet pure, concat;
    for (const auto& r : s.rules) {
        if (r.is_concat()) {
            concat.insert(r);
            continue;
        }
        if (r.pure()) pure.insert(r);
        if (r.beta.empty()) concat.insert(SplicingRule::concat("", r.alpha, r.gamma, r.delta));
        if (r.alpha.empty()) concat.insert(SplicingRule::concat(r.gamma, r.delta, r.beta, ""));
    }
    SplicingSystem out = s;
    out.rules = complete(concat, s.alphabet);
    out.rules.insert(pure.begin(), pure.end());
    return out;
}

/// The four flat rules simulating one alphabetic circular rule.
inline RuleSet circular_expansion(const SplicingRule& r) {
    if (!r.alphabetic()) throw Error("circular expansion needs an alphabetic rule, got " + r.to_string());
    if (r.is_concat()) throw Error("circular expansion needs a splice rule, got " + r.to_string());
    return {SplicingRule::splice(r.alpha, r.beta, r.gamma, r.delta), SplicingRule::splice(r.delta, r.gamma, r.beta, r.alpha),
            SplicingRule::concat(r.beta, r.alpha, r.gamma, r.delta), SplicingRule::concat(r.gamma, r.delta, r.beta, r.alpha)};
}

/// Flat heterogeneous system whose language is the full linearization of
/// the circular system's language.
inline SplicingSystem circular_to_flat(const SplicingSystem& s) {
    if (!s.circular()) throw Error("circular_to_flat expects a circular system");
    if (!s.alphabetic()) throw Error("circular_to_flat expects an alphabetic system");
    SplicingSystem out;
    out.alphabet = s.alphabet;
    out.mode = Mode::Flat;
    out.initial = s.initial.linearized();
    for (const auto& r : s.rules) out.rules.merge(circular_expansion(r));
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Concatenations first

namespace detail {

inline std::vector<Word> step_results(const SplicingSystem& s, const ProductionSequence& seq) {
    std::vector<Word> out;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        ProductionSequence prefix;
        prefix.steps.assign(seq.steps.begin(), seq.steps.begin() + static_cast<long>(i) + 1);
        out.push_back(replay_sequence(s, prefix));
    }
    return out;
}

/// Drops steps the final step does not depend on.
inline ProductionSequence prune_dead(const ProductionSequence& seq) {
    if (seq.steps.empty()) return seq;
    const std::size_t n = seq.steps.size();
    std::vector<bool> live(n, false);
    live[n - 1] = true;
    for (std::size_t i = n; i-- > 0;) {
        if (!live[i]) continue;
        for (const OperandRef* ref : {&seq.steps[i].left, &seq.steps[i].right})
            if (ref->from_step) live[ref->step] = true;
    }
    std::vector<std::size_t> index(n, 0);
    ProductionSequence out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!live[i]) continue;
        Production p = seq.steps[i];
        for (OperandRef* ref : {&p.left, &p.right})
            if (ref->from_step) ref->step = index[ref->step];
        index[i] = out.steps.size();
        out.steps.push_back(std::move(p));
    }
    return out;
}

inline const Word& operand_word(const OperandRef& ref, const std::vector<Word>& results) {
    return ref.from_step ? results[ref.step] : ref.word;
}

/// Moves the concatenation at `b` in front of the insertion at `a = b - 1`.
inline ProductionSequence swap_back(const SplicingSystem& s, const ProductionSequence& seq, std::size_t b) {
    const std::size_t a = b - 1;
    const auto results = step_results(s, seq);
    const Production& p1 = seq.steps[a];
    const Production& p2 = seq.steps[b];
    const bool left_is_w = p2.left.from_step && p2.left.step == a;
    const bool right_is_w = p2.right.from_step && p2.right.step == a;

    bool referenced_later = false;
    for (std::size_t k = b + 1; k < seq.steps.size(); ++k)
        for (const OperandRef* ref : {&seq.steps[k].left, &seq.steps[k].right})
            if (ref->from_step && ref->step == a) referenced_later = true;

    std::vector<Production> fresh;  // new steps taking positions a, a+1, ...
    std::size_t b_new = 0;          // new index of the step replacing b
    std::size_t a_new = 0;          // new index of p1, if kept
    bool keep_p1 = referenced_later;

    const Word& u = operand_word(p1.left, results);
    const Word& v = operand_word(p1.right, results);
    const std::size_t c = p1.cut;
    auto at = [&](std::size_t k) { return OperandRef::result_of(a + k); };

    if (!left_is_w && !right_is_w) {
        fresh = {p2, p1};
        b_new = a;
        a_new = a + 1;
        keep_p1 = true;  // already placed
    } else if (left_is_w != right_is_w) {
        Production p3 = p2, p4 = p1;
        if (left_is_w) {
            // [u1·u2 ⊢ u1 v u2 ; (u1 v u2)·s] → [u·s ; u1 · v · u2 s]
            const Word& t = operand_word(p2.right, results);
            p3.left = p1.left;
            p3.cut = u.size();
            p3.result = u + t;
            p4.left = at(0);
            p4.cut = c;
        } else {
            // [u1·u2 ⊢ u1 v u2 ; p·(u1 v u2)] → [p·u ; p u1 · v · u2]
            const Word& t = operand_word(p2.left, results);
            p3.right = p1.left;
            p3.result = t + u;
            p4.left = at(0);
            p4.cut = t.size() + c;
        }
        p4.result = results[b];
        fresh = {p3, p4};
        b_new = a + 1;
    } else {
        // Self-concatenation: [u·u ; u1 · v · u2 u ; u1 v u2 u1 · v · u2].
        Production p3 = p2, p4 = p1, p5 = p1;
        p3.left = p1.left;
        p3.right = p1.left;
        p3.cut = u.size();
        p3.result = u + u;
        p4.left = at(0);
        p4.cut = c;
        p4.result = u.substr(0, c) + v + u.substr(c) + u;
        p5.left = at(1);
        p5.cut = u.size() + v.size() + c;
        p5.result = results[b];
        fresh = {p3, p4, p5};
        b_new = a + 2;
    }
    if ((left_is_w || right_is_w) && referenced_later) {
        fresh.push_back(p1);
        a_new = a + fresh.size() - 1;
    }
    const std::size_t shift = fresh.size();  // replaces two steps

    ProductionSequence out;
    out.steps.assign(seq.steps.begin(), seq.steps.begin() + static_cast<long>(a));
    for (auto& p : fresh) out.steps.push_back(p);
    auto remap = [&](OperandRef& ref) {
        if (!ref.from_step) return;
        if (ref.step == a) {
            if (!keep_p1) throw Error("internal: dropped step still referenced");
            ref.step = a_new;
        } else if (ref.step == b) {
            ref.step = b_new;
        } else if (ref.step > b) {
            ref.step = ref.step - 2 + shift;
        }
    };
    for (std::size_t k = b + 1; k < seq.steps.size(); ++k) {
        Production p = seq.steps[k];
        remap(p.left);
        remap(p.right);
        out.steps.push_back(std::move(p));
    }
    return prune_dead(out);
}

} // namespace detail

/// Rewrites a production sequence of an alphabetic heterogeneous system
/// into one with the same result in which every concatenation precedes
/// every proper insertion. The earliest misplaced concatenation is moved
/// left one step at a time; each move uses a plain swap or one of the two
/// exchange patterns, so the number of concatenations never grows and
/// their positions only decrease.
inline ProductionSequence normalize_sequence(const SplicingSystem& s, const ProductionSequence& input) {
    if (s.circular()) throw Error("normalize_sequence expects a flat system");
    for (const auto& r : s.rules) {
        if (!r.alphabetic()) throw Error("normalize_sequence needs alphabetic rules; " + r.to_string() + " is not");
        if (!r.is_concat() && !r.pure())
            throw Error("normalize_sequence needs a heterogeneous system; " + r.to_string() + " is neither pure nor a concatenation");
    }
    const Word target = replay_sequence(s, input);
    if (input.steps.empty()) return input;
    ProductionSequence seq = detail::prune_dead(input);
    for (;;) {
        std::size_t first_insert = seq.steps.size(), misplaced = seq.steps.size();
        for (std::size_t i = 0; i < seq.steps.size(); ++i) {
            if (!seq.steps[i].rule.is_concat()) {
                if (first_insert == seq.steps.size()) first_insert = i;
            } else if (first_insert < i) {
                misplaced = i;
                break;
            }
        }
        if (misplaced == seq.steps.size()) break;
        seq = detail::swap_back(s, seq, misplaced);
    }
    if (replay_sequence(s, seq) != target) throw Error("internal: normalization changed the result");
    return seq;
}

/// True when no concatenation step follows a proper insertion.
inline bool concatenations_first(const ProductionSequence& seq) {
    bool seen_insertion = false;
    for (const auto& p : seq.steps) {
        if (!p.rule.is_concat()) seen_insertion = true;
        else if (seen_insertion) return false;
    }
    return true;
}

} // namespace splice
