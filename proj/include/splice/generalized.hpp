#pragma once

// Generalized context-free grammars, whose right-hand-side sets M_v are
// context-free languages, and their reduction to ordinary grammars by
// eliminating one variable at a time.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cfg.hpp"

namespace splice {

/// M_v is given as a grammar whose terminals are drawn from the outer
/// terminals and the outer variable names.
struct GeneralizedCfg {
    std::set<std::string> terminals;
    std::vector<std::string> variables;  ///< declaration order
    std::string start;
    std::map<std::string, Cfg> rhs;

    void validate() const {
        std::set<std::string> vars(variables.begin(), variables.end());
        if (!vars.count(start)) throw Error("generalized grammar: start '" + start + "' is not a variable");
        for (const auto& [v, m] : rhs) {
            if (!vars.count(v)) throw Error("generalized grammar: right-hand sides given for unknown variable '" + v + "'");
            for (const auto& t : m.terminals())
                if (!terminals.count(t) && !vars.count(t))
                    throw Error("generalized grammar: symbol '" + t + "' in M_" + v + " is undeclared");
        }
    }
};

/// One-variable case: the grammar generating M_S, with S promoted from a
/// terminal to a variable and S -> (start of that grammar) added.
inline Cfg kral_single(const GeneralizedCfg& g) {
    if (g.variables.size() != 1) throw Error("kral_single expects exactly one variable");
    g.validate();
    const std::string& s = g.variables.front();
    auto it = g.rhs.find(s);
    Cfg out(s);
    if (it == g.rhs.end()) return out;
    const Cfg& h = it->second;
    std::map<std::string, std::string> rename;
    for (const auto& v : h.variables()) rename[v] = v == s ? fresh_name(v) : v;
    out.add_rule(s, {Symbol::var(rename.at(h.start()))});
    for (const auto& r : h.rules()) {
        Sentence rhs;
        for (const auto& sym : r.rhs) {
            if (sym.variable) rhs.push_back(Symbol::var(rename.at(sym.name)));
            else if (sym.name == s) rhs.push_back(Symbol::var(s));
            else rhs.push_back(sym);
        }
        out.add_rule(rename.at(r.lhs), std::move(rhs));
    }
    return out;
}

/// Eliminates the non-start variables in declaration order, then flattens
/// the remaining one-variable grammar.
inline Cfg kral_eliminate(const GeneralizedCfg& g) {
    g.validate();
    GeneralizedCfg cur = g;
    std::vector<std::string> order;
    for (const auto& v : g.variables)
        if (v != g.start) order.push_back(v);
    for (const auto& x : order) {
        GeneralizedCfg gx;
        gx.terminals = cur.terminals;
        for (const auto& v : cur.variables)
            if (v != x) gx.terminals.insert(v);
        gx.variables = {x};
        gx.start = x;
        if (auto it = cur.rhs.find(x); it != cur.rhs.end()) gx.rhs.emplace(x, it->second);
        Cfg mx = kral_single(gx);
        std::map<std::string, Cfg> sigma{{x, mx}};
        GeneralizedCfg next;
        next.terminals = cur.terminals;
        next.start = cur.start;
        for (const auto& v : cur.variables) {
            if (v == x) continue;
            next.variables.push_back(v);
            if (auto it = cur.rhs.find(v); it != cur.rhs.end()) next.rhs.emplace(v, substitute(it->second, sigma));
        }
        cur = std::move(next);
    }
    return cfg_trim(kral_single(cur));
}

} // namespace splice
