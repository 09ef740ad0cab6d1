#pragma once

// Test-only oracles and random generators. The oracles deliberately avoid
// the library's algorithms: closures are computed by naive iteration over
// explicit cut points, regular membership goes through std::regex, and
// grammar languages come from a direct leftmost expander.

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "splice/splice.hpp"

namespace oracle {

using splice::Word;
using splice::WordSet;

inline std::string fixture(const std::string& name) { return std::string(SPLICE_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline splice::SplicingSystem load(const std::string& name) { return splice::parse_system(read_fixture(name)); }

inline bool has_prefix(const Word& w, const Word& p) { return w.size() >= p.size() && w.compare(0, p.size(), p) == 0; }
inline bool has_suffix(const Word& w, const Word& s) {
    return w.size() >= s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
}
inline bool fits(const Word& w, const Word& p, const Word& s) { return w.size() >= p.size() + s.size() && has_prefix(w, p) && has_suffix(w, s); }

inline WordSet rotations(const Word& w) {
    WordSet out;
    for (std::size_t i = 0; i < std::max<std::size_t>(w.size(), 1); ++i) out.insert(w.substr(i) + w.substr(0, i));
    return out;
}

/// Every word over `letters` of length at most n.
inline WordSet all_words(const std::string& letters, std::size_t n) {
    WordSet out{Word{}};
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (char c : letters) next.push_back(w + c);
        out.insert(next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

/// One flat production step done by hand: every split u = x·y with x
/// ending in α and y starting with β.
inline WordSet naive_products(const splice::SplicingRule& r, const Word& u, const Word& v) {
    WordSet out;
    if (!fits(v, r.gamma, r.delta)) return out;
    if (r.is_concat()) {
        if (fits(u, r.alpha, r.beta)) out.insert(u + v);
        return out;
    }
    for (std::size_t i = 0; i <= u.size(); ++i) {
        Word x = u.substr(0, i), y = u.substr(i);
        if (has_suffix(x, r.alpha) && has_prefix(y, r.beta)) out.insert(x + v + y);
    }
    return out;
}

/// Closure up to length n by repeated full passes until nothing changes.
/// Circular systems are handled on linear representatives closed under
/// rotation, so the result is the full linearization.
inline WordSet naive_closure(const splice::SplicingSystem& s, std::size_t n) {
    WordSet cur;
    for (const auto& w : s.initial.enumerate(n)) {
        if (s.circular()) cur.merge(rotations(w));
        else cur.insert(w);
    }
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Word> snapshot(cur.begin(), cur.end());
        WordSet fresh;
        for (const auto& u : snapshot)
            for (const auto& v : snapshot) {
                if (u.size() + v.size() > n) continue;
                for (const auto& r : s.rules) {
                    if (s.circular()) {
                        if (fits(u, r.beta, r.alpha) && fits(v, r.gamma, r.delta)) fresh.merge(rotations(u + v));
                    } else {
                        for (auto& w : naive_products(r, u, v)) fresh.insert(w);
                    }
                }
            }
        for (const auto& w : fresh)
            if (cur.insert(w).second) changed = true;
    }
    if (s.contains_empty) cur.insert(Word{});
    return cur;
}

/// Membership in a regex of the library's syntax via std::regex.
inline bool regex_matches(const std::string& re, const Word& w) {
    std::string ecma;
    for (char c : re) {
        if (c == '_') ecma += "(?:)";
        else if (c == ' ') continue;
        else ecma += c;
    }
    if (ecma.empty()) return false;
    return std::regex_match(w, std::regex(ecma));
}

inline WordSet regex_language(const std::string& re, const std::string& letters, std::size_t n) {
    WordSet out;
    for (const auto& w : all_words(letters, n))
        if (regex_matches(re, w)) out.insert(w);
    return out;
}

/// Words of length <= n derived by leftmost expansion. Sentential forms are
/// pruned when their terminal count exceeds n or their total length
/// exceeds 2n + 4; fine for grammars whose nullable variables are few.
inline WordSet expand(const splice::Cfg& g, std::size_t n) {
    using Form = std::vector<splice::Symbol>;
    WordSet out;
    std::set<Form> seen;
    std::vector<Form> stack{{splice::Symbol::var(g.start())}};
    while (!stack.empty()) {
        Form f = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(f).second) continue;
        std::size_t terms = 0;
        std::size_t first_var = f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i].variable) {
                if (first_var == f.size()) first_var = i;
            } else {
                terms += f[i].name.size();
            }
        }
        if (terms > n || f.size() > 2 * n + 4) continue;
        if (first_var == f.size()) {
            Word w;
            for (const auto& s : f) w += s.name;
            out.insert(w);
            continue;
        }
        for (const auto* r : g.rules_for(f[first_var].name)) {
            Form next(f.begin(), f.begin() + static_cast<long>(first_var));
            next.insert(next.end(), r->rhs.begin(), r->rhs.end());
            next.insert(next.end(), f.begin() + static_cast<long>(first_var) + 1, f.end());
            stack.push_back(std::move(next));
        }
    }
    return out;
}

/// Balanced words over a (open) and b (close) of each length.
inline std::size_t dyck_count(std::size_t len) {
    std::size_t count = 0;
    for (const auto& w : all_words("ab", len)) {
        if (w.size() != len) continue;
        long depth = 0;
        bool ok = true;
        for (char c : w) {
            depth += c == 'a' ? 1 : -1;
            if (depth < 0) ok = false;
        }
        if (ok && depth == 0) ++count;
    }
    return count;
}

inline std::string show(const WordSet& ws, std::size_t limit = 12) {
    std::string out = "{";
    std::size_t k = 0;
    for (const auto& w : ws) {
        if (k++ == limit) {
            out += " ...";
            break;
        }
        out += (k > 1 ? " " : "") + (w.empty() ? std::string("_") : w);
    }
    return out + "}";
}

inline std::string diff(const WordSet& a, const WordSet& b) {
    WordSet only_a, only_b;
    for (const auto& w : a)
        if (!b.count(w)) only_a.insert(w);
    for (const auto& w : b)
        if (!a.count(w)) only_b.insert(w);
    return "left only " + show(only_a) + ", right only " + show(only_b);
}

// ---------------------------------------------------------------------------
// Random generators (fixed seeds at the call sites)

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Word random_word(Rng& rng, const std::string& letters, std::size_t lo, std::size_t hi) {
    Word w;
    for (std::size_t i = pick(rng, lo, hi); i > 0; --i) w += letters[pick(rng, 0, letters.size() - 1)];
    return w;
}

inline Word random_handle(Rng& rng, const std::string& letters) { return random_word(rng, letters, 0, 1); }

struct SystemShape {
    std::size_t max_letters = 2;
    std::size_t max_initial = 2;
    std::size_t max_word = 3;
    std::size_t max_rules = 2;
    double concat_share = 0.0;  ///< chance that a rule has concat usage
    double regular_share = 0.0; ///< chance of a regular initial set
    splice::Mode mode = splice::Mode::Flat;
};

inline std::string random_regex(Rng& rng, const std::string& letters, int depth = 3) {
    std::size_t choice = depth <= 0 ? pick(rng, 0, 1) : pick(rng, 0, 6);
    switch (choice) {
    case 0:
    case 1: return std::string(1, letters[pick(rng, 0, letters.size() - 1)]);
    case 2: return "(" + random_regex(rng, letters, depth - 1) + "|" + random_regex(rng, letters, depth - 1) + ")";
    case 3:
    case 4: return random_regex(rng, letters, depth - 1) + random_regex(rng, letters, depth - 1);
    case 5: return "(" + random_regex(rng, letters, depth - 1) + ")*";
    default: return "(" + random_regex(rng, letters, depth - 1) + ")+";
    }
}

inline splice::SplicingSystem random_system(Rng& rng, const SystemShape& shape) {
    const std::string letters = std::string("ab").substr(0, pick(rng, 1, shape.max_letters));
    splice::Alphabet a(letters);
    splice::RuleSet rules;
    for (std::size_t i = pick(rng, 1, shape.max_rules); i > 0; --i) {
        splice::SplicingRule r = splice::SplicingRule::splice(random_handle(rng, letters), random_handle(rng, letters),
                                                              random_handle(rng, letters), random_handle(rng, letters));
        if (shape.mode == splice::Mode::Flat && std::bernoulli_distribution(shape.concat_share)(rng))
            r.usage = splice::Usage::Concat;
        rules.insert(r);
    }
    splice::InitialSet init;
    if (std::bernoulli_distribution(shape.regular_share)(rng)) {
        init = splice::InitialSet::regular(splice::regex_to_dfa(random_regex(rng, letters, 2), a));
    } else {
        WordSet words;
        for (std::size_t i = pick(rng, 1, shape.max_initial); i > 0; --i) words.insert(random_word(rng, letters, 1, shape.max_word));
        init = splice::InitialSet::finite(words);
    }
    if (shape.mode == splice::Mode::Circular && init.has_empty()) init = init.without_empty();
    return splice::SplicingSystem::make(a, init, rules, shape.mode);
}

/// A random sequence of legal steps for a flat system, built forward from
/// the initial words. Returns an empty sequence when no step applies.
inline splice::ProductionSequence random_sequence(Rng& rng, const splice::SplicingSystem& s, std::size_t max_steps,
                                                  std::size_t max_len = 14) {
    splice::ProductionSequence seq;
    std::vector<Word> initial;
    for (const auto& w : s.initial.enumerate(4)) initial.push_back(w);
    if (initial.empty()) return seq;
    std::vector<splice::RuleSet::value_type> rules(s.rules.begin(), s.rules.end());
    const std::size_t target = pick(rng, 1, max_steps);
    for (std::size_t attempt = 0; attempt < 400 && seq.steps.size() < target; ++attempt) {
        auto operand = [&]() -> std::pair<splice::OperandRef, Word> {
            const std::size_t k = seq.steps.size();
            if (k > 0 && std::bernoulli_distribution(0.6)(rng)) {
                std::size_t i = pick(rng, 0, k - 1);
                return {splice::OperandRef::result_of(i), seq.steps[i].result};
            }
            const Word& w = initial[pick(rng, 0, initial.size() - 1)];
            return {splice::OperandRef::initial(w), w};
        };
        auto [lref, u] = operand();
        auto [rref, v] = operand();
        if (u.size() + v.size() > max_len) continue;
        const auto& r = rules[pick(rng, 0, rules.size() - 1)];
        std::vector<std::size_t> cuts;
        if (r.is_concat()) {
            if (fits(u, r.alpha, r.beta) && fits(v, r.gamma, r.delta)) cuts.push_back(u.size());
        } else if (fits(v, r.gamma, r.delta)) {
            for (std::size_t c = 0; c <= u.size(); ++c)
                if (has_suffix(u.substr(0, c), r.alpha) && has_prefix(u.substr(c), r.beta)) cuts.push_back(c);
        }
        if (cuts.empty()) continue;
        std::size_t c = cuts[pick(rng, 0, cuts.size() - 1)];
        splice::Production p;
        p.rule = r;
        p.left = lref;
        p.right = rref;
        p.cut = c;
        p.result = u.substr(0, c) + v + u.substr(c);
        seq.steps.push_back(std::move(p));
    }
    return seq;
}

} // namespace oracle
