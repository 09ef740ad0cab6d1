#pragma once

// Context-free grammars: representation, text format, trimming, bounded
// enumeration, and the closure constructions (regular embedding, Bar-Hillel
// intersection, substitution by grafting, marker insertion image).

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "word.hpp"

namespace splice {

struct Symbol {
    bool variable = false;
    std::string name;

    static Symbol var(std::string n) { return {true, std::move(n)}; }
    static Symbol term(std::string n) { return {false, std::move(n)}; }

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Sentence = std::vector<Symbol>;

struct CfgRule {
    std::string lhs;
    Sentence rhs;
    friend auto operator<=>(const CfgRule&, const CfgRule&) = default;
};

/// Returns `base_N` with N drawn from a process-wide counter.
inline std::string fresh_name(const std::string& base) {
    static std::atomic<unsigned long> counter{0};
    return base + "_" + std::to_string(++counter);
}

/// Context-free grammar over named terminals. Plain letters are one-char
/// names; marker symbols and pseudo-terminals use longer names.
class Cfg {
public:
    explicit Cfg(std::string start = "S") : start_(std::move(start)) { declare(start_); }

    const std::string& start() const noexcept { return start_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<CfgRule>& rules() const noexcept { return rules_; }

    bool has_variable(const std::string& v) const { return var_set_.count(v) > 0; }

    /// Terminals declared explicitly or used by some rule.
    std::set<std::string> terminals() const {
        std::set<std::string> out = extra_terminals_;
        for (const auto& r : rules_)
            for (const auto& s : r.rhs)
                if (!s.variable) out.insert(s.name);
        return out;
    }

    void declare(const std::string& v) {
        if (var_set_.insert(v).second) variables_.push_back(v);
    }

    void declare_terminal(const std::string& t) { extra_terminals_.insert(t); }

    /// Adds a rule (duplicates are ignored) and declares its variables.
    void add_rule(const std::string& lhs, Sentence rhs) {
        declare(lhs);
        for (const auto& s : rhs)
            if (s.variable) declare(s.name);
        CfgRule r{lhs, std::move(rhs)};
        if (rule_set_.insert(r).second) rules_.push_back(std::move(r));
    }

    /// Rule whose right-hand side spells `w` letter by letter.
    void add_word_rule(const std::string& lhs, std::string_view w) {
        Sentence rhs;
        for (char c : w) rhs.push_back(Symbol::term(std::string(1, c)));
        add_rule(lhs, std::move(rhs));
    }

    std::vector<const CfgRule*> rules_for(const std::string& v) const {
        std::vector<const CfgRule*> out;
        for (const auto& r : rules_)
            if (r.lhs == v) out.push_back(&r);
        return out;
    }

    /// Grammar text format; see parse_cfg.
    std::string to_string() const;

private:
    std::string start_;
    std::vector<std::string> variables_;
    std::set<std::string> var_set_;
    std::vector<CfgRule> rules_;
    std::set<CfgRule> rule_set_;
    std::set<std::string> extra_terminals_;
};

// ---------------------------------------------------------------------------
// Text format
//
//   start S
//   S -> a S b | a b      # comment
//   T -> _                # the empty word
//
// Tokens are separated by whitespace. A token starting with an uppercase
// letter is a variable; any other token is a run of one-character
// terminals, except `{name}` which is one terminal called `name`.

namespace detail {

inline bool needs_braces(const std::string& t) {
    if (t.size() != 1) return true;
    unsigned char c = static_cast<unsigned char>(t[0]);
    return std::isupper(c) || t == "|" || t == "{" || t == "_";
}

inline std::string render_sentence(const Sentence& rhs) {
    if (rhs.empty()) return "_";
    std::string out, run;
    auto flush = [&] {
        if (run.empty()) return;
        if (!out.empty()) out += ' ';
        out += run;
        run.clear();
    };
    for (const auto& s : rhs) {
        if (s.variable) {
            flush();
            if (!out.empty()) out += ' ';
            out += s.name;
        } else if (needs_braces(s.name)) {
            flush();
            if (!out.empty()) out += ' ';
            out += '{' + s.name + '}';
        } else {
            run += s.name;
        }
    }
    flush();
    return out;
}

} // namespace detail

inline std::string Cfg::to_string() const {
    std::ostringstream os;
    os << "start " << start_ << '\n';
    for (const auto& v : variables_) {
        auto rs = rules_for(v);
        if (rs.empty()) continue;
        os << v << " ->";
        for (std::size_t i = 0; i < rs.size(); ++i) os << (i ? " | " : " ") << detail::render_sentence(rs[i]->rhs);
        os << '\n';
    }
    return os.str();
}

inline Cfg parse_cfg(std::string_view text, std::size_t first_line = 1) {
    std::optional<Cfg> g;
    std::vector<std::pair<std::string, Sentence>> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = first_line - 1;
    auto fail = [&](const std::string& msg) { throw Error("grammar line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "start") {
            if (tok.size() != 2) fail("expected 'start <Var>'");
            if (g) fail("duplicate start declaration");
            if (!std::isupper(static_cast<unsigned char>(tok[1][0]))) fail("start symbol must be a variable");
            g.emplace(tok[1]);
            continue;
        }
        if (tok.size() < 2 || tok[1] != "->") fail("expected 'Var -> rhs | ...'");
        if (!std::isupper(static_cast<unsigned char>(tok[0][0]))) fail("left-hand side '" + tok[0] + "' is not a variable");
        Sentence cur;
        bool any = false;
        auto finish = [&] {
            pending.emplace_back(tok[0], cur);
            cur.clear();
            any = false;
        };
        for (std::size_t i = 2; i < tok.size(); ++i) {
            const std::string& t = tok[i];
            if (t == "|") {
                if (!any) fail("empty alternative (write _ for the empty word)");
                finish();
                continue;
            }
            any = true;
            if (t == "_") continue;
            if (std::isupper(static_cast<unsigned char>(t[0]))) {
                cur.push_back(Symbol::var(t));
            } else if (t.size() >= 3 && t.front() == '{' && t.back() == '}') {
                cur.push_back(Symbol::term(t.substr(1, t.size() - 2)));
            } else {
                for (char c : t) {
                    if (is_reserved_letter(c)) fail(std::string("reserved character '") + c + "' in right-hand side");
                    cur.push_back(Symbol::term(std::string(1, c)));
                }
            }
        }
        if (!any) fail("empty alternative (write _ for the empty word)");
        finish();
    }
    if (!g) {
        if (pending.empty()) throw Error("grammar has no start declaration");
        g.emplace(pending.front().first);
    }
    for (auto& [lhs, rhs] : pending) g->add_rule(lhs, std::move(rhs));
    return *g;
}

// ---------------------------------------------------------------------------
// Indexed form used by the algorithms

namespace detail {

struct Compiled {
    std::vector<std::string> vars;
    std::vector<std::string> terms;
    std::map<std::string, int> var_index, term_index;
    // Symbol encoding: v >= 0 is a variable, -(t + 1) is terminal t.
    struct Rule {
        int lhs;
        std::vector<int> rhs;
    };
    std::vector<Rule> rules;
    int start = 0;

    explicit Compiled(const Cfg& g) {
        for (const auto& v : g.variables()) {
            var_index.emplace(v, static_cast<int>(vars.size()));
            vars.push_back(v);
        }
        for (const auto& t : g.terminals()) {
            term_index.emplace(t, static_cast<int>(terms.size()));
            terms.push_back(t);
        }
        start = var_index.at(g.start());
        for (const auto& r : g.rules()) {
            Rule cr{var_index.at(r.lhs), {}};
            for (const auto& s : r.rhs) cr.rhs.push_back(s.variable ? var_index.at(s.name) : -(term_index.at(s.name) + 1));
            rules.push_back(std::move(cr));
        }
    }

    static bool is_var(int s) { return s >= 0; }
    static int term_of(int s) { return -s - 1; }

    Symbol symbol(int s) const { return is_var(s) ? Symbol::var(vars[s]) : Symbol::term(terms[term_of(s)]); }
};

inline std::vector<bool> generating(const Compiled& c) {
    std::vector<bool> gen(c.vars.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : c.rules) {
            if (gen[r.lhs]) continue;
            if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](int s) { return !Compiled::is_var(s) || gen[s]; })) {
                gen[r.lhs] = true;
                changed = true;
            }
        }
    }
    return gen;
}

inline std::vector<bool> nullable(const Compiled& c) {
    std::vector<bool> nul(c.vars.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : c.rules) {
            if (nul[r.lhs]) continue;
            if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](int s) { return Compiled::is_var(s) && nul[s]; })) {
                nul[r.lhs] = true;
                changed = true;
            }
        }
    }
    return nul;
}

} // namespace detail

/// Removes non-generating variables, then variables unreachable from the
/// start. The start variable is always kept (with no rules when the
/// language is empty).
inline Cfg cfg_trim(const Cfg& g) {
    detail::Compiled c(g);
    auto gen = detail::generating(c);
    std::vector<bool> reach(c.vars.size(), false);
    std::vector<int> stack;
    if (gen[c.start]) {
        reach[c.start] = true;
        stack.push_back(c.start);
    }
    auto usable = [&](const detail::Compiled::Rule& r) {
        return std::all_of(r.rhs.begin(), r.rhs.end(), [&](int s) { return !detail::Compiled::is_var(s) || gen[s]; });
    };
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& r : c.rules)
            if (r.lhs == v && usable(r))
                for (int s : r.rhs)
                    if (detail::Compiled::is_var(s) && !reach[s]) {
                        reach[s] = true;
                        stack.push_back(s);
                    }
    }
    Cfg out(g.start());
    for (std::size_t v = 0; v < c.vars.size(); ++v)
        if (reach[v]) out.declare(c.vars[v]);
    for (const auto& r : g.rules()) {
        int lhs = c.var_index.at(r.lhs);
        if (reach[lhs] && usable(c.rules[&r - g.rules().data()])) out.add_rule(r.lhs, r.rhs);
    }
    return out;
}

inline bool cfg_empty(const Cfg& g) {
    detail::Compiled c(g);
    return !detail::generating(c)[c.start];
}

inline bool cfg_nullable(const Cfg& g) {
    detail::Compiled c(g);
    return detail::nullable(c)[c.start];
}

// ---------------------------------------------------------------------------
// Bounded enumeration

namespace detail {

using IdString = std::basic_string<int>;

/// table[v][l] = sentences of terminal ids of length exactly l derivable from v.
inline std::vector<std::vector<std::set<IdString>>> enumerate_table(const Compiled& c, std::size_t n) {
    const std::size_t nv = c.vars.size();
    std::vector<std::vector<std::set<IdString>>> table(nv, std::vector<std::set<IdString>>(n + 1));
    std::vector<std::vector<std::size_t>> rules_using(nv);
    for (std::size_t i = 0; i < c.rules.size(); ++i)
        for (int s : c.rules[i].rhs)
            if (Compiled::is_var(s) && (rules_using[s].empty() || rules_using[s].back() != i)) rules_using[s].push_back(i);

    auto nonempty = [&](int s, std::size_t m) {
        if (!Compiled::is_var(s)) return m == 1;
        return !table[s][m].empty();
    };

    for (std::size_t len = 0; len <= n; ++len) {
        std::vector<std::size_t> todo(c.rules.size());
        for (std::size_t i = 0; i < todo.size(); ++i) todo[i] = i;
        while (!todo.empty()) {
            std::vector<bool> changed(nv, false);
            bool any = false;
            for (std::size_t ri : todo) {
                const auto& r = c.rules[ri];
                const std::size_t k = r.rhs.size();
                if (k == 0) {
                    if (len == 0 && table[r.lhs][0].insert(IdString{}).second) changed[r.lhs] = any = true;
                    continue;
                }
                // feasible[p][m]: suffix from p can produce exactly m.
                std::vector<std::vector<char>> feasible(k + 1, std::vector<char>(len + 1, 0));
                feasible[k][0] = 1;
                for (std::size_t p = k; p-- > 0;)
                    for (std::size_t m = 0; m <= len; ++m)
                        for (std::size_t h = 0; h <= m && !feasible[p][m]; ++h)
                            if (feasible[p + 1][m - h] && nonempty(r.rhs[p], h)) feasible[p][m] = 1;
                if (!feasible[0][len]) continue;
                std::vector<IdString> produced;
                IdString cur;
                std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t p, std::size_t rem) {
                    if (p == k) {
                        produced.push_back(cur);
                        return;
                    }
                    int s = r.rhs[p];
                    for (std::size_t h = 0; h <= rem; ++h) {
                        if (!feasible[p + 1][rem - h] || !nonempty(s, h)) continue;
                        if (!Compiled::is_var(s)) {
                            cur.push_back(Compiled::term_of(s));
                            walk(p + 1, rem - h);
                            cur.pop_back();
                        } else {
                            std::vector<IdString> options(table[s][h].begin(), table[s][h].end());
                            for (const auto& o : options) {
                                std::size_t mark = cur.size();
                                cur += o;
                                walk(p + 1, rem - h);
                                cur.resize(mark);
                            }
                        }
                    }
                };
                walk(0, len);
                for (auto& w : produced)
                    if (table[r.lhs][len].insert(std::move(w)).second) changed[r.lhs] = any = true;
            }
            todo.clear();
            if (!any) break;
            std::vector<bool> queued(c.rules.size(), false);
            for (std::size_t v = 0; v < nv; ++v)
                if (changed[v])
                    for (std::size_t ri : rules_using[v])
                        if (!queued[ri]) {
                            queued[ri] = true;
                            todo.push_back(ri);
                        }
            std::sort(todo.begin(), todo.end());
        }
    }
    return table;
}

} // namespace detail

/// Sentences of L(g) with at most `n` terminal symbols, each terminal
/// counting as one symbol regardless of its name length. Sorted by length,
/// then lexicographically on terminal names.
inline std::vector<std::vector<std::string>> enumerate_symbols(const Cfg& g, std::size_t n) {
    detail::Compiled c(g);
    auto table = detail::enumerate_table(c, n);
    std::vector<std::vector<std::string>> out;
    for (std::size_t len = 0; len <= n; ++len) {
        std::vector<std::vector<std::string>> level;
        for (const auto& w : table[c.start][len]) {
            std::vector<std::string> s;
            for (int t : w) s.push_back(c.terms[t]);
            level.push_back(std::move(s));
        }
        std::sort(level.begin(), level.end());
        for (auto& s : level) out.push_back(std::move(s));
    }
    return out;
}

/// Words of L(g) of length at most `n`, in length-lex order.
inline WordSet enumerate_cfg(const Cfg& g, std::size_t n) {
    WordSet out;
    for (const auto& s : enumerate_symbols(g, n)) {
        Word w;
        for (const auto& t : s) w += t;
        out.insert(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructions

/// Right-linear grammar with one variable `Q<i>` per live state.
inline Cfg cfg_from_dfa(const Dfa& d) {
    auto live = d.coreachable();
    auto name = [](State q) { return "Q" + std::to_string(q); };
    Cfg g(name(d.start()));
    for (State q = 0; q < d.size(); ++q) {
        if (!live[q]) continue;
        for (std::size_t i = 0; i < d.alphabet().size(); ++i) {
            State t = d.next(q, i);
            std::string a(1, d.alphabet()[i]);
            if (live[t]) g.add_rule(name(q), {Symbol::term(a), Symbol::var(name(t))});
            if (d.is_final(t)) g.add_rule(name(q), {Symbol::term(a)});
        }
    }
    if (d.is_final(d.start())) g.add_rule(name(d.start()), {});
    return cfg_trim(g);
}

/// Grammar for a finite set of words.
inline Cfg cfg_from_words(const WordSet& words, const std::string& start = "S") {
    Cfg g(start);
    for (const auto& w : words) g.add_word_rule(start, w);
    return g;
}

namespace detail {

/// Equivalent grammar whose right-hand sides have at most two symbols.
inline Cfg binarize(const Cfg& g) {
    Cfg out(g.start());
    for (const auto& v : g.variables()) out.declare(v);
    for (const auto& t : g.terminals()) out.declare_terminal(t);
    for (const auto& r : g.rules()) {
        if (r.rhs.size() <= 2) {
            out.add_rule(r.lhs, r.rhs);
            continue;
        }
        std::string lhs = r.lhs;
        for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
            std::string rest = fresh_name("B");
            out.add_rule(lhs, {r.rhs[i], Symbol::var(rest)});
            lhs = rest;
        }
        out.add_rule(lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()});
    }
    return out;
}

/// Grammar for L(g) \ {ε} without empty right-hand sides.
inline Cfg remove_epsilon(const Cfg& g) {
    Cfg b = binarize(g);
    Compiled c(b);
    auto nul = nullable(c);
    Cfg out(b.start());
    for (const auto& v : b.variables()) out.declare(v);
    for (const auto& r : b.rules()) {
        std::vector<std::size_t> optional;
        for (std::size_t i = 0; i < r.rhs.size(); ++i)
            if (r.rhs[i].variable && nul[c.var_index.at(r.rhs[i].name)]) optional.push_back(i);
        for (unsigned mask = 0; mask < (1u << optional.size()); ++mask) {
            Sentence rhs;
            for (std::size_t i = 0, o = 0; i < r.rhs.size(); ++i) {
                bool drop = o < optional.size() && optional[o] == i && ((mask >> o) & 1u);
                if (o < optional.size() && optional[o] == i) ++o;
                if (!drop) rhs.push_back(r.rhs[i]);
            }
            if (!rhs.empty()) out.add_rule(r.lhs, std::move(rhs));
        }
    }
    return out;
}

} // namespace detail

/// Triple construction: a grammar for L(g) ∩ L(d).
inline Cfg bar_hillel(const Cfg& g, const Dfa& d) {
    for (const auto& t : g.terminals())
        if (t.size() != 1 || !d.alphabet().contains(t[0]))
            throw Error("alphabet mismatch: grammar terminal '" + t + "' is not a letter of {" + d.alphabet().letters() + "}");
    Cfg b = detail::binarize(cfg_trim(g));
    detail::Compiled c(b);
    const std::size_t nq = d.size(), nv = c.vars.size();
    auto idx = [&](std::size_t p, std::size_t v, std::size_t q) { return (p * nv + v) * nq + q; };
    std::vector<bool> gen(nq * nv * nq, false);
    auto term_next = [&](std::size_t p, int s) { return d.next(p, c.terms[detail::Compiled::term_of(s)][0]); };
    // For a symbol from state p, the set of reachable end states.
    auto ends = [&](std::size_t p, int s) {
        std::vector<std::size_t> out;
        if (!detail::Compiled::is_var(s)) {
            out.push_back(term_next(p, s));
            return out;
        }
        for (std::size_t q = 0; q < nq; ++q)
            if (gen[idx(p, s, q)]) out.push_back(q);
        return out;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : c.rules)
            for (std::size_t p = 0; p < nq; ++p) {
                std::vector<std::size_t> reach;
                if (r.rhs.empty()) reach.push_back(p);
                else if (r.rhs.size() == 1) reach = ends(p, r.rhs[0]);
                else
                    for (std::size_t m : ends(p, r.rhs[0]))
                        for (std::size_t q : ends(m, r.rhs[1])) reach.push_back(q);
                for (std::size_t q : reach)
                    if (!gen[idx(p, r.lhs, q)]) {
                        gen[idx(p, r.lhs, q)] = changed = true;
                    }
            }
    }
    std::map<std::size_t, std::string> names;
    auto name = [&](std::size_t p, int v, std::size_t q) {
        auto key = idx(p, v, q);
        auto it = names.find(key);
        if (it == names.end()) it = names.emplace(key, fresh_name(c.vars[v])).first;
        return it->second;
    };
    std::string start = fresh_name("S");
    Cfg out(start);
    for (std::size_t q = 0; q < nq; ++q)
        if (d.is_final(q) && gen[idx(d.start(), c.start, q)]) out.add_rule(start, {Symbol::var(name(d.start(), c.start, q))});
    auto sym = [&](std::size_t p, int s, std::size_t q) {
        return detail::Compiled::is_var(s) ? Symbol::var(name(p, s, q)) : Symbol::term(c.terms[detail::Compiled::term_of(s)]);
    };
    for (const auto& r : c.rules)
        for (std::size_t p = 0; p < nq; ++p) {
            if (r.rhs.empty()) {
                if (gen[idx(p, r.lhs, p)]) out.add_rule(name(p, r.lhs, p), {});
            } else if (r.rhs.size() == 1) {
                for (std::size_t q : ends(p, r.rhs[0])) out.add_rule(name(p, r.lhs, q), {sym(p, r.rhs[0], q)});
            } else {
                for (std::size_t m : ends(p, r.rhs[0]))
                    for (std::size_t q : ends(m, r.rhs[1])) out.add_rule(name(p, r.lhs, q), {sym(p, r.rhs[0], m), sym(m, r.rhs[1], q)});
            }
        }
    return cfg_trim(out);
}

/// Grafting substitution: each mapped terminal becomes a fresh variable
/// carrying a renamed copy of the image grammar. Terminals absent from the
/// map are left alone.
inline Cfg substitute(const Cfg& g, const std::map<std::string, Cfg>& sigma) {
    std::map<std::string, std::string> graft_start;
    Cfg out(g.start());
    for (const auto& v : g.variables()) out.declare(v);
    for (const auto& t : g.terminals())
        if (!sigma.count(t)) out.declare_terminal(t);
    auto used = g.terminals();
    for (const auto& [t, image] : sigma) {
        if (!used.count(t)) continue;
        std::map<std::string, std::string> rename;
        for (const auto& v : image.variables()) {
            std::string n;
            do n = fresh_name(v);
            while (out.has_variable(n));
            rename.emplace(v, n);
            out.declare(n);
        }
        graft_start.emplace(t, rename.at(image.start()));
        for (const auto& r : image.rules()) {
            Sentence rhs;
            for (const auto& s : r.rhs) rhs.push_back(s.variable ? Symbol::var(rename.at(s.name)) : s);
            out.add_rule(rename.at(r.lhs), std::move(rhs));
        }
        for (const auto& term : image.terminals()) out.declare_terminal(term);
    }
    for (const auto& r : g.rules()) {
        Sentence rhs;
        for (const auto& s : r.rhs) {
            auto it = s.variable ? graft_start.end() : graft_start.find(s.name);
            rhs.push_back(it == graft_start.end() ? s : Symbol::var(it->second));
        }
        out.add_rule(r.lhs, std::move(rhs));
    }
    return out;
}

/// Turns the listed terminals into variables (renamed as given).
inline Cfg promote_terminals(const Cfg& g, const std::map<std::string, std::string>& to_var) {
    Cfg out(g.start());
    for (const auto& v : g.variables()) out.declare(v);
    for (const auto& r : g.rules()) {
        Sentence rhs;
        for (const auto& s : r.rhs) {
            auto it = s.variable ? to_var.end() : to_var.find(s.name);
            rhs.push_back(it == to_var.end() ? s : Symbol::var(it->second));
        }
        out.add_rule(r.lhs, std::move(rhs));
    }
    return out;
}

/// Replaces every non-start variable whose only rule is a single-variable
/// unit rule by the variable it points to.
inline Cfg contract_unit_chains(const Cfg& g) {
    std::map<std::string, std::string> alias;
    for (const auto& v : g.variables()) {
        if (v == g.start()) continue;
        auto rs = g.rules_for(v);
        if (rs.size() == 1 && rs[0]->rhs.size() == 1 && rs[0]->rhs[0].variable && rs[0]->rhs[0].name != v)
            alias.emplace(v, rs[0]->rhs[0].name);
    }
    auto resolve = [&](std::string v) {
        std::set<std::string> seen;
        while (alias.count(v) && seen.insert(v).second) v = alias.at(v);
        return v;
    };
    Cfg out(g.start());
    for (const auto& v : g.variables())
        if (!alias.count(v) || resolve(v) == v) out.declare(v);
    for (const auto& r : g.rules()) {
        if (alias.count(r.lhs) && resolve(r.lhs) != r.lhs) continue;
        Sentence rhs;
        for (const auto& s : r.rhs) rhs.push_back(s.variable ? Symbol::var(resolve(s.name)) : s);
        out.add_rule(r.lhs, std::move(rhs));
    }
    return out;
}

/// Renames the start to S and the other variables to V1, V2, ... in
/// declaration order.
inline Cfg cfg_canonical_names(const Cfg& g) {
    std::map<std::string, std::string> name{{g.start(), "S"}};
    std::size_t next = 0;
    for (const auto& v : g.variables())
        if (v != g.start()) name.emplace(v, "V" + std::to_string(++next));
    Cfg out("S");
    for (const auto& v : g.variables()) out.declare(name.at(v));
    for (const auto& r : g.rules()) {
        Sentence rhs;
        for (const auto& s : r.rhs) rhs.push_back(s.variable ? Symbol::var(name.at(s.name)) : s);
        out.add_rule(name.at(r.lhs), std::move(rhs));
    }
    return out;
}

/// True when some bijection of variables, fixing the start, maps the rule
/// set of `a` onto that of `b`. Exhaustive; meant for small grammars.
inline bool cfg_isomorphic(const Cfg& a, const Cfg& b) {
    if (a.variables().size() != b.variables().size() || a.rules().size() != b.rules().size()) return false;
    if (a.terminals() != b.terminals()) return false;
    std::vector<std::string> others_b;
    for (const auto& v : b.variables())
        if (v != b.start()) others_b.push_back(v);
    std::sort(others_b.begin(), others_b.end());
    std::vector<std::string> others_a;
    for (const auto& v : a.variables())
        if (v != a.start()) others_a.push_back(v);
    std::set<CfgRule> target(b.rules().begin(), b.rules().end());
    do {
        std::map<std::string, std::string> m{{a.start(), b.start()}};
        for (std::size_t i = 0; i < others_a.size(); ++i) m[others_a[i]] = others_b[i];
        bool ok = true;
        for (const auto& r : a.rules()) {
            CfgRule mapped{m.at(r.lhs), {}};
            for (const auto& s : r.rhs) mapped.rhs.push_back(s.variable ? Symbol::var(m.at(s.name)) : s);
            if (!target.count(mapped)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(others_b.begin(), others_b.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Insertion markers

/// Name of the marker terminal recording the seam between letters a and b.
inline std::string marker_name(char a, char b) { return std::string("<") + a + "," + b + ">"; }

/// a1 <a1,a2> a2 <a2,a3> ... a_n, as a sequence of terminal names.
inline std::vector<std::string> word_ins(std::string_view w) {
    if (w.empty()) throw Error("Ins is undefined on the empty word");
    std::vector<std::string> out{std::string(1, w[0])};
    for (std::size_t i = 1; i < w.size(); ++i) {
        out.push_back(marker_name(w[i - 1], w[i]));
        out.push_back(std::string(1, w[i]));
    }
    return out;
}

/// Grammar for { word_ins(w) : w ∈ L(g) }. Each variable is split by the
/// first and last letter of what it derives, and a marker is placed at
/// every seam between adjacent right-hand-side symbols.
inline Cfg ins_image(const Cfg& g) {
    for (const auto& t : g.terminals())
        if (t.size() != 1) throw Error("ins_image expects a grammar over plain letters");
    if (cfg_nullable(g)) throw Error("ins_image: the language contains the empty word");
    Cfg b = cfg_trim(detail::remove_epsilon(cfg_trim(g)));
    detail::Compiled c(b);
    std::string letters;
    for (const auto& t : c.terms) letters += t;
    const std::size_t k = letters.size(), nv = c.vars.size();
    auto pair_index = [&](std::size_t v, std::size_t x, std::size_t y) { return (v * k + x) * k + y; };
    std::vector<bool> feasible(nv * k * k, false);
    // (first, last) options of a symbol.
    auto options = [&](int s) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        if (!detail::Compiled::is_var(s)) {
            std::size_t t = static_cast<std::size_t>(detail::Compiled::term_of(s));
            out.emplace_back(t, t);
            return out;
        }
        for (std::size_t x = 0; x < k; ++x)
            for (std::size_t y = 0; y < k; ++y)
                if (feasible[pair_index(s, x, y)]) out.emplace_back(x, y);
        return out;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : c.rules) {
            std::vector<std::pair<std::size_t, std::size_t>> res;
            if (r.rhs.size() == 1) res = options(r.rhs[0]);
            else
                for (auto [x1, y1] : options(r.rhs[0]))
                    for (auto [x2, y2] : options(r.rhs[1])) res.emplace_back(x1, y2);
            for (auto [x, y] : res)
                if (!feasible[pair_index(r.lhs, x, y)]) feasible[pair_index(r.lhs, x, y)] = changed = true;
        }
    }
    std::map<std::size_t, std::string> names;
    auto name = [&](int v, std::size_t x, std::size_t y) {
        auto key = pair_index(v, x, y);
        auto it = names.find(key);
        if (it == names.end()) it = names.emplace(key, fresh_name(c.vars[v])).first;
        return it->second;
    };
    auto sym = [&](int s, std::size_t x, std::size_t y) {
        return detail::Compiled::is_var(s) ? Symbol::var(name(s, x, y)) : Symbol::term(c.terms[detail::Compiled::term_of(s)]);
    };
    std::string start = fresh_name("S");
    Cfg out(start);
    for (auto [x, y] : options(c.start)) out.add_rule(start, {Symbol::var(name(c.start, x, y))});
    for (const auto& r : c.rules) {
        if (r.rhs.size() == 1) {
            for (auto [x, y] : options(r.rhs[0])) out.add_rule(name(r.lhs, x, y), {sym(r.rhs[0], x, y)});
            continue;
        }
        for (auto [x1, y1] : options(r.rhs[0]))
            for (auto [x2, y2] : options(r.rhs[1]))
                out.add_rule(name(r.lhs, x1, y2),
                             {sym(r.rhs[0], x1, y1), Symbol::term(marker_name(letters[y1], letters[x2])), sym(r.rhs[1], x2, y2)});
    }
    return cfg_trim(out);
}

} // namespace splice
