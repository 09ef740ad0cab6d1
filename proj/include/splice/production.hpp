#pragma once

// Productions and production sequences, with replay checking.

#include <optional>
#include <string>
#include <vector>

#include "rule.hpp"
#include "system.hpp"

namespace splice {

/// Either an initial word, given literally, or the result of an earlier step.
struct OperandRef {
    bool from_step = false;
    Word word;              ///< initial word (when !from_step)
    std::size_t step = 0;   ///< 0-based index of an earlier step (when from_step)

    static OperandRef initial(Word w) { return {false, std::move(w), 0}; }
    static OperandRef result_of(std::size_t i) { return {true, {}, i}; }

    friend bool operator==(const OperandRef&, const OperandRef&) = default;
};

/// Flat: result = left[0, cut) + right + left[cut, |left|); for concat usage
/// cut = |left|. Circular: the operands are first rotated (by the given
/// offsets, applied to their canonical representatives) and then
/// concatenated; `result` is the canonical representative.
struct Production {
    SplicingRule rule;
    OperandRef left, right;
    std::size_t cut = 0;
    std::size_t left_rotation = 0, right_rotation = 0;
    Word result;
};

struct ProductionSequence {
    /// Result of a sequence of length 0.
    std::optional<Word> base;
    std::vector<Production> steps;

    static ProductionSequence of_word(Word w) { return {std::move(w), {}}; }

    std::size_t size() const noexcept { return steps.size(); }

    const Word& result() const {
        if (!steps.empty()) return steps.back().result;
        if (!base) throw Error("empty production sequence");
        return *base;
    }
};

class ReplayError : public Error {
public:
    ReplayError(std::size_t step, const std::string& msg)
        : Error("step " + std::to_string(step + 1) + ": " + msg), step_(step) {}
    /// 0-based index of the offending step.
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

namespace detail {

inline bool initial_contains(const SplicingSystem& s, const Word& w) {
    if (!s.circular()) return s.initial.contains(w);
    for (const auto& c : conjugates(w))
        if (s.initial.contains(c)) return true;
    return false;
}

/// What a step produces when its operands are the given words.
inline Word step_outcome(const SplicingSystem& s, const Production& p, const Word& u, const Word& v, std::size_t index) {
    const auto& r = p.rule;
    if (s.circular()) {
        if (r.is_concat()) throw ReplayError(index, "circular systems use splice rules only");
        if (u.empty() || v.empty()) throw ReplayError(index, "empty circular operand");
        Word cu = rotate(least_rotation(u), p.left_rotation), cv = rotate(least_rotation(v), p.right_rotation);
        if (!matches_pattern(cu, r.beta, r.alpha) || !matches_pattern(cv, r.gamma, r.delta))
            throw ReplayError(index, "rotated operands " + cu + ", " + cv + " do not fit rule " + r.to_string());
        return least_rotation(cu + cv);
    }
    if (r.is_concat()) {
        if (p.cut != u.size()) throw ReplayError(index, "a concatenation must cut at the end of the left operand");
        auto w = apply_concat(r, u, v);
        if (!w) throw ReplayError(index, "operands " + u + ", " + v + " do not fit rule " + r.to_string());
        return *w;
    }
    if (p.cut > u.size() || !cut_allowed(r, u, p.cut) || !matches_pattern(v, r.gamma, r.delta))
        throw ReplayError(index, "rule " + r.to_string() + " cannot insert " + v + " into " + u + " at " + std::to_string(p.cut));
    return u.substr(0, p.cut) + v + u.substr(p.cut);
}

} // namespace detail

/// Checks every step against the system and returns the final result.
inline Word replay_sequence(const SplicingSystem& s, const ProductionSequence& seq) {
    if (seq.steps.empty()) {
        if (!seq.base) throw ReplayError(0, "empty production sequence");
        if (!detail::initial_contains(s, *seq.base)) throw ReplayError(0, "word " + *seq.base + " is not initial");
        return s.circular() ? least_rotation(*seq.base) : *seq.base;
    }
    std::vector<Word> results;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& p = seq.steps[i];
        if (!s.rules.count(p.rule)) throw ReplayError(i, "rule " + p.rule.to_string() + " is not in the system");
        auto resolve = [&](const OperandRef& ref) -> Word {
            if (ref.from_step) {
                if (ref.step >= i) throw ReplayError(i, "dangling reference to step " + std::to_string(ref.step + 1));
                return results[ref.step];
            }
            if (!detail::initial_contains(s, ref.word)) throw ReplayError(i, "operand " + ref.word + " is not initial");
            return ref.word;
        };
        Word u = resolve(p.left), v = resolve(p.right);
        Word w = detail::step_outcome(s, p, u, v, i);
        Word recorded = s.circular() && !p.result.empty() ? least_rotation(p.result) : p.result;
        if (w != recorded) throw ReplayError(i, "recorded result " + p.result + " differs from the legal outcome " + w);
        results.push_back(std::move(w));
    }
    return results.back();
}

} // namespace splice
