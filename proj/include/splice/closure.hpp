#pragma once

// Bounded splicing closure by saturation, derivation witnesses, and the
// backtracking membership checker.

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "production.hpp"
#include "system.hpp"

namespace splice {

namespace detail {

/// How a word entered the closure.
struct Origin {
    bool initial = true;
    SplicingRule rule;
    Word left, right;
    std::size_t cut = 0, left_rotation = 0, right_rotation = 0;
};

using OriginMap = std::map<Word, Origin, LengthLex>;

/// Saturation over canonical representatives (circular) or plain words
/// (flat). Every production is length-additive, so restricting results to
/// length <= n loses nothing shorter: the result is exact up to n.
inline OriginMap saturate(const SplicingSystem& s, std::size_t n) {
    OriginMap known;
    std::vector<std::vector<Word>> by_length(n + 1);
    std::deque<Word> work;
    auto add = [&](Word w, Origin o) {
        if (w.size() > n || w.empty()) return;
        if (known.emplace(w, std::move(o)).second) {
            by_length[w.size()].push_back(w);
            work.push_back(std::move(w));
        }
    };
    for (const auto& w : s.initial.enumerate(n)) add(s.circular() ? least_rotation(w) : w, Origin{});

    auto combine = [&](const Word& u, const Word& v) {
        for (const auto& r : s.rules) {
            if (s.circular()) {
                if (r.is_concat()) continue;
                Word cu = u, cv = v;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    Word x = rotate(cu, i);
                    if (!matches_pattern(x, r.beta, r.alpha)) continue;
                    for (std::size_t j = 0; j < v.size(); ++j) {
                        Word y = rotate(cv, j);
                        if (!matches_pattern(y, r.gamma, r.delta)) continue;
                        add(least_rotation(x + y), Origin{false, r, u, v, x.size(), i, j});
                    }
                }
            } else if (r.is_concat()) {
                if (auto w = apply_concat(r, u, v)) add(std::move(*w), Origin{false, r, u, v, u.size(), 0, 0});
            } else if (matches_pattern(v, r.gamma, r.delta)) {
                for (std::size_t cut = 0; cut <= u.size(); ++cut)
                    if (cut_allowed(r, u, cut)) add(u.substr(0, cut) + v + u.substr(cut), Origin{false, r, u, v, cut, 0, 0});
            }
        }
    };

    while (!work.empty()) {
        Word w = std::move(work.front());
        work.pop_front();
        for (std::size_t len = 1; len + w.size() <= n; ++len) {
            // Copy: `add` may grow the bucket being iterated.
            std::vector<Word> partners = by_length[len];
            for (const auto& x : partners) {
                combine(w, x);
                if (x != w) combine(x, w);
            }
        }
    }
    return known;
}

} // namespace detail

/// L(s) ∩ A^{<=n} for a flat system (ε included when the flag is set).
inline WordSet closure_bounded(const SplicingSystem& s, std::size_t n) {
    if (s.circular()) throw Error("closure_bounded: use closure_bounded_circular for circular systems");
    WordSet out;
    for (auto& [w, o] : detail::saturate(s, n)) out.insert(w);
    if (s.contains_empty) out.insert(Word{});
    return out;
}

/// Circular words of the circular language with length at most `n`.
inline CircularWordSet closure_bounded_circular(const SplicingSystem& s, std::size_t n) {
    if (!s.circular()) throw Error("closure_bounded_circular: the system is flat");
    CircularWordSet out;
    for (auto& [w, o] : detail::saturate(s, n)) out.insert(CircularWord(w));
    return out;
}

/// Flat closure, or the full linearization of the circular closure.
inline WordSet closure_language(const SplicingSystem& s, std::size_t n) {
    return s.circular() ? linearize(closure_bounded_circular(s, n)) : closure_bounded(s, n);
}

namespace detail {

inline std::size_t rotation_to(const Word& canonical, const Word& target) {
    for (std::size_t k = 0; k < canonical.size(); ++k)
        if (rotate(canonical, k) == target) return k;
    throw Error("internal: " + target + " is not a conjugate of " + canonical);
}

/// Emits steps for `w` (and its ancestors) in dependency order.
template <class Lookup>
OperandRef emit_steps(const Word& w, const Lookup& origin_of, std::map<Word, std::size_t>& done, ProductionSequence& seq) {
    const Origin& o = origin_of(w);
    if (o.initial) return OperandRef::initial(w);
    if (auto it = done.find(w); it != done.end()) return OperandRef::result_of(it->second);
    OperandRef l = emit_steps(o.left, origin_of, done, seq);
    OperandRef r = emit_steps(o.right, origin_of, done, seq);
    seq.steps.push_back(Production{o.rule, l, r, o.cut, o.left_rotation, o.right_rotation, w});
    done.emplace(w, seq.steps.size() - 1);
    return OperandRef::result_of(seq.steps.size() - 1);
}

} // namespace detail

namespace detail {

/// For circular systems, an initial operand is recorded as a conjugate that
/// actually belongs to the initial set (rotations are relative to the
/// canonical form, so they stay valid).
inline Word initial_form(const SplicingSystem& s, const Word& w) {
    if (!s.circular()) return w;
    for (const auto& c : conjugates(w))
        if (s.initial.contains(c)) return c;
    return w;
}

inline void fix_initial_operands(const SplicingSystem& s, ProductionSequence& seq) {
    for (auto& p : seq.steps)
        for (OperandRef* ref : {&p.left, &p.right})
            if (!ref->from_step) ref->word = initial_form(s, ref->word);
}

} // namespace detail

/// A production sequence deriving `w`, read off the saturation's first
/// derivation of each word. For circular systems any conjugate of a
/// closure word is accepted.
inline ProductionSequence witness(const SplicingSystem& s, const Word& w, std::size_t n) {
    if (w.empty()) {
        if (!s.contains_empty) throw Error("the empty word is not in the language");
        return ProductionSequence::of_word(w);
    }
    auto known = detail::saturate(s, n);
    Word key = s.circular() ? least_rotation(w) : w;
    auto it = known.find(key);
    if (it == known.end()) throw Error("word " + w + " is not in the closure up to length " + std::to_string(n));
    if (it->second.initial) return ProductionSequence::of_word(detail::initial_form(s, key));
    ProductionSequence seq;
    std::map<Word, std::size_t> done;
    auto lookup = [&](const Word& x) -> const detail::Origin& { return known.at(x); };
    detail::emit_steps(key, lookup, done, seq);
    detail::fix_initial_operands(s, seq);
    return seq;
}

// ---------------------------------------------------------------------------
// Membership

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : Error("search budget of " + std::to_string(budget) + " nodes exceeded") {}
};

struct MemberResult {
    bool member = false;
    std::optional<ProductionSequence> trace;
};

/// Decides w ∈ L(s) by undoing productions. A word is derivable when it is
/// initial or reads x α · γ y δ · β z with x α β z and γ y δ both nonempty
/// and derivable (for circular systems, after choosing a conjugate; for a
/// concatenation rule, the block is a whole suffix). Every piece is
/// shorter than the word, so the recursion terminates; verdicts are
/// memoized per word and `budget` bounds the decompositions examined.
inline MemberResult member(const SplicingSystem& s, const Word& w, std::size_t budget = 1'000'000) {
    MemberResult result;
    if (w.empty()) {
        result.member = s.contains_empty;
        if (result.member) result.trace = ProductionSequence::of_word(w);
        return result;
    }
    s.alphabet.require(w);
    const bool circ = s.circular();
    auto canon = [&](const Word& x) { return circ ? least_rotation(x) : x; };

    std::optional<WordSet> cf_words;
    if (s.initial.kind() == InitialSet::Kind::ContextFree) cf_words = s.initial.enumerate(w.size());
    auto in_initial = [&](const Word& x) { return cf_words ? cf_words->count(x) > 0 : s.initial.contains(x); };
    auto is_initial = [&](const Word& key) {
        if (!circ) return in_initial(key);
        for (const auto& c : conjugates(key))
            if (in_initial(c)) return true;
        return false;
    };

    // memo[key]: absent = unknown, nullopt = not derivable, Production with
    // empty result = initial, otherwise the undone production.
    std::map<Word, std::optional<Production>> memo;
    std::size_t nodes = 0;

    std::function<bool(const Word&)> derivable = [&](const Word& key) -> bool {
        if (auto it = memo.find(key); it != memo.end()) return it->second.has_value();
        if (is_initial(key)) {
            memo[key] = Production{};
            return true;
        }
        const WordSet views = circ ? conjugates(key) : WordSet{key};
        for (const auto& view : views) {
            const std::size_t m = view.size();
            for (const auto& r : s.rules) {
                if (circ && r.is_concat()) continue;
                const std::size_t min_block = std::max<std::size_t>(1, r.gamma.size() + r.delta.size());
                for (std::size_t i = r.is_concat() ? 1 : r.alpha.size(); i + min_block <= m; ++i) {
                    if (!r.is_concat() && view.compare(i - r.alpha.size(), r.alpha.size(), r.alpha) != 0) continue;
                    // A concatenation leaves the block as a whole suffix.
                    for (std::size_t j = r.is_concat() ? m : i + min_block; j <= m; ++j) {
                        if (j - i == m) break;
                        if (++nodes > budget) throw BudgetExceeded(budget);
                        if (!r.is_concat() && (j + r.beta.size() > m || view.compare(j, r.beta.size(), r.beta) != 0)) continue;
                        std::string_view block(view.data() + i, j - i);
                        if (!matches_pattern(block, r.gamma, r.delta)) continue;
                        Word rest = view.substr(0, i) + view.substr(j);
                        if (r.is_concat() && !matches_pattern(rest, r.alpha, r.beta)) continue;
                        Word piece(block);
                        Word left_key = canon(rest), right_key = canon(piece);
                        if (!derivable(left_key) || !derivable(right_key)) continue;
                        Production p;
                        p.rule = r;
                        p.left = OperandRef::initial(left_key);
                        p.right = OperandRef::initial(right_key);
                        p.result = key;
                        if (circ) {
                            Word from_cut = view.substr(j) + view.substr(0, i);  // β z x α
                            p.left_rotation = detail::rotation_to(left_key, from_cut);
                            p.right_rotation = detail::rotation_to(right_key, piece);
                            p.cut = from_cut.size();
                        } else {
                            p.cut = i;
                        }
                        memo[key] = std::move(p);
                        return true;
                    }
                }
            }
        }
        memo[key] = std::nullopt;
        return false;
    };

    Word top = canon(w);
    result.member = derivable(top);
    if (!result.member) return result;

    // Rebuild the derivation bottom-up from the memo entries.
    ProductionSequence seq;
    std::map<Word, std::size_t> done;
    std::function<OperandRef(const Word&)> build = [&](const Word& key) -> OperandRef {
        const Production& p = *memo.at(key);
        if (p.result.empty()) return OperandRef::initial(key);
        if (auto it = done.find(key); it != done.end()) return OperandRef::result_of(it->second);
        Production step = p;
        step.left = build(p.left.word);
        step.right = build(p.right.word);
        seq.steps.push_back(std::move(step));
        done.emplace(key, seq.steps.size() - 1);
        return OperandRef::result_of(seq.steps.size() - 1);
    };
    OperandRef ref = build(top);
    if (!ref.from_step) seq.base = detail::initial_form(s, top);
    detail::fix_initial_operands(s, seq);
    result.trace = std::move(seq);
    return result;
}

} // namespace splice
