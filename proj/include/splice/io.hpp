#pragma once

// Text formats for systems and automata.
//
// System file:
//
//   alphabet a b c
//   mode flat                 # or circular
//   initial finite: ab c      # `_` is the empty word
//   initial regular: (ab)+c   # alternatively
//   initial dfa:              # alternatively, an automaton block ...
//     states 2
//     start 0
//     final 1
//     0 a 1
//   end
//   initial contextfree:      # ... or a grammar block
//     start S
//     S -> a S b | ab
//   end
//   rules:
//   splice a#b$a#b
//   concat - # c $ a # b      # `-` is an empty handle
//
// A line whose first non-blank character is `#` is a comment. Other lines
// may end in a comment introduced by ` #`, except rule lines, where `#`
// is part of the syntax. Automaton files are a `alphabet` line followed by
// the body of an automaton block; missing transitions go to a dead state.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automata.hpp"
#include "cfg.hpp"
#include "regex.hpp"
#include "system.hpp"

namespace splice {

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg) : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n\v\f";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline bool is_comment_line(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t[0] == '#';
}

/// Removes a trailing ` # ...` comment.
inline std::string strip_trailing_comment(std::string_view line) {
    for (std::size_t i = 1; i < line.size(); ++i)
        if (line[i] == '#' && std::isspace(static_cast<unsigned char>(line[i - 1]))) return trim(line.substr(0, i));
    return trim(line);
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline Alphabet parse_alphabet_tokens(const std::vector<std::string>& tokens, std::size_t lineno) {
    std::string letters;
    for (const auto& t : tokens) {
        if (t.size() != 1) throw ParseError(lineno, "alphabet entries must be single characters, got '" + t + "'");
        letters += t;
    }
    try {
        return Alphabet(letters);
    } catch (const Error& e) {
        throw ParseError(lineno, e.what());
    }
}

/// Automaton block body: `states N`, `start q`, `final q...`, `p a q`.
inline Dfa parse_dfa_lines(const Alphabet& a, const std::vector<std::pair<std::size_t, std::string>>& lines) {
    std::optional<std::size_t> states;
    std::optional<std::size_t> start;
    std::vector<std::size_t> finals;
    std::vector<std::tuple<std::size_t, char, std::size_t, std::size_t>> edges;
    auto number = [](const std::string& t, std::size_t lineno) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(t, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != t.size() || t.empty()) throw ParseError(lineno, "expected a state number, got '" + t + "'");
        return static_cast<std::size_t>(v);
    };
    for (const auto& [lineno, raw] : lines) {
        auto tok = split_ws(strip_trailing_comment(raw));
        if (tok.empty()) continue;
        if (tok[0] == "states") {
            if (tok.size() != 2) throw ParseError(lineno, "expected 'states <count>'");
            states = number(tok[1], lineno);
            if (*states == 0) throw ParseError(lineno, "an automaton needs at least one state");
        } else if (tok[0] == "start") {
            if (tok.size() != 2) throw ParseError(lineno, "expected 'start <state>'");
            start = number(tok[1], lineno);
        } else if (tok[0] == "final") {
            for (std::size_t i = 1; i < tok.size(); ++i) finals.push_back(number(tok[i], lineno));
        } else if (tok.size() == 3 && tok[1].size() == 1) {
            if (!a.contains(tok[1][0])) throw ParseError(lineno, "unknown letter '" + tok[1] + "'");
            edges.emplace_back(number(tok[0], lineno), tok[1][0], number(tok[2], lineno), lineno);
        } else {
            throw ParseError(lineno, "expected a transition 'p a q'");
        }
    }
    std::size_t first = lines.empty() ? 0 : lines.front().first;
    if (!states) throw ParseError(first, "automaton without a 'states' line");
    if (!start) throw ParseError(first, "automaton without a 'start' line");
    const std::size_t n = *states;
    if (*start >= n) throw ParseError(first, "start state out of range");
    Nfa nfa(a);
    for (std::size_t q = 0; q < n; ++q) nfa.add_state();
    for (std::size_t f : finals) {
        if (f >= n) throw ParseError(first, "final state " + std::to_string(f) + " out of range");
        nfa.set_final(f);
    }
    for (const auto& [p, c, q, lineno] : edges) {
        if (p >= n || q >= n) throw ParseError(lineno, "state out of range");
        nfa.add_edge(p, c, q);
    }
    nfa.add_start(*start);
    return determinize(nfa);
}

inline std::string dfa_body(const Dfa& d) {
    std::ostringstream os;
    os << "states " << d.size() << "\nstart " << d.start() << "\nfinal";
    for (State q = 0; q < d.size(); ++q)
        if (d.is_final(q)) os << ' ' << q;
    os << '\n';
    for (State q = 0; q < d.size(); ++q)
        for (std::size_t i = 0; i < d.alphabet().size(); ++i) os << q << ' ' << d.alphabet()[i] << ' ' << d.next(q, i) << '\n';
    return os.str();
}

inline std::string alphabet_line(const Alphabet& a) {
    std::string out = "alphabet";
    for (char c : a) (out += ' ') += c;
    return out;
}

} // namespace detail

/// Parses one rule, e.g. `a#b$a#b`, `b # - $ - # a`, or `<-#c$a#b>c`.
inline SplicingRule parse_rule(std::string_view text, const Alphabet& a, Usage usage = Usage::Splice) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() >= 3 && s.front() == '<' && s.substr(s.size() - 2) == ">c") {
        s = s.substr(1, s.size() - 3);
        usage = Usage::Concat;
    }
    auto dollar = s.find('$');
    if (dollar == std::string::npos || s.find('$', dollar + 1) != std::string::npos)
        throw Error("malformed rule '" + std::string(text) + "': expected exactly one '$'");
    std::vector<Word> handles;
    for (const std::string& part : {s.substr(0, dollar), s.substr(dollar + 1)}) {
        auto hash = part.find('#');
        if (hash == std::string::npos || part.find('#', hash + 1) != std::string::npos)
            throw Error("malformed rule '" + std::string(text) + "': each side needs exactly one '#'");
        for (std::string h : {part.substr(0, hash), part.substr(hash + 1)}) {
            if (h.empty()) throw Error("malformed rule '" + std::string(text) + "': write '-' for an empty handle");
            if (h == "-") h.clear();
            else a.require(h, "handle");
            handles.push_back(h);
        }
    }
    return SplicingRule{handles[0], handles[1], handles[2], handles[3], usage};
}

/// Parses a system file. Notes about accepted but normalized input (the
/// empty word in the initial set) are appended to `notes` when given.
inline SplicingSystem parse_system(std::string_view text, std::vector<std::string>* notes = nullptr) {
    std::vector<std::string> lines;
    {
        std::istringstream in{std::string(text)};
        for (std::string l; std::getline(in, l);) lines.push_back(l);
    }
    std::optional<Alphabet> alphabet;
    Mode mode = Mode::Flat;
    std::optional<InitialSet> initial;
    std::optional<std::size_t> initial_line;
    WordSet finite_words;
    bool finite_kind = false;
    RuleSet rules;
    bool in_rules = false;

    auto need_alphabet = [&](std::size_t lineno) -> const Alphabet& {
        if (!alphabet) throw ParseError(lineno, "the alphabet must be declared first");
        return *alphabet;
    };
    auto set_initial = [&](std::size_t lineno) {
        if (initial_line) throw ParseError(lineno, "initial set given twice");
        initial_line = lineno;
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const std::string& raw = lines[i];
        if (detail::is_comment_line(raw)) continue;
        std::string line = detail::trim(raw);
        auto keyword = line.substr(0, line.find_first_of(" \t:"));

        if (keyword == "splice" || keyword == "concat") {
            const auto& a = need_alphabet(lineno);
            try {
                rules.insert(parse_rule(line.substr(keyword.size()), a, keyword == "concat" ? Usage::Concat : Usage::Splice));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(lineno, e.what());
            }
            continue;
        }
        if (in_rules && line.find('$') != std::string::npos) {
            try {
                rules.insert(parse_rule(line, need_alphabet(lineno)));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(lineno, e.what());
            }
            continue;
        }
        line = detail::strip_trailing_comment(raw);
        auto tok = detail::split_ws(line);
        if (tok[0] == "alphabet") {
            if (alphabet) throw ParseError(lineno, "alphabet declared twice");
            alphabet = detail::parse_alphabet_tokens({tok.begin() + 1, tok.end()}, lineno);
        } else if (tok[0] == "mode") {
            if (tok.size() != 2 || (tok[1] != "flat" && tok[1] != "circular"))
                throw ParseError(lineno, "expected 'mode flat' or 'mode circular'");
            mode = tok[1] == "flat" ? Mode::Flat : Mode::Circular;
        } else if (tok[0] == "rules:" || (tok[0] == "rules" && tok.size() == 2 && tok[1] == ":")) {
            in_rules = true;
        } else if (tok[0] == "initial") {
            const auto& a = need_alphabet(lineno);
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError(lineno, "expected 'initial <kind>: ...'");
            std::string kind = detail::trim(line.substr(std::string("initial").size(), colon - std::string("initial").size()));
            std::string rest = detail::trim(line.substr(colon + 1));
            if (kind == "finite") {
                if (initial_line && !finite_kind) throw ParseError(lineno, "initial set given twice");
                initial_line = lineno;
                finite_kind = true;
                for (const auto& w : detail::split_ws(rest)) {
                    if (w == "_") {
                        finite_words.insert(Word{});
                        continue;
                    }
                    try {
                        a.require(w, "initial word");
                    } catch (const Error& e) {
                        throw ParseError(lineno, e.what());
                    }
                    finite_words.insert(w);
                }
            } else if (kind == "regular") {
                set_initial(lineno);
                try {
                    initial = InitialSet::regular(regex_to_dfa(rest, a));
                } catch (const Error& e) {
                    throw ParseError(lineno, e.what());
                }
            } else if (kind == "dfa" || kind == "contextfree") {
                set_initial(lineno);
                if (!rest.empty()) throw ParseError(lineno, "the block starts on the next line");
                std::vector<std::pair<std::size_t, std::string>> body;
                std::size_t j = i + 1;
                for (; j < lines.size() && detail::trim(lines[j]) != "end"; ++j) body.emplace_back(j + 1, lines[j]);
                if (j == lines.size()) throw ParseError(lineno, "block is not closed by 'end'");
                i = j;
                if (kind == "dfa") {
                    std::vector<std::pair<std::size_t, std::string>> kept;
                    for (auto& [n, l] : body)
                        if (!detail::is_comment_line(l)) kept.emplace_back(n, l);
                    initial = InitialSet::regular(detail::parse_dfa_lines(a, kept));
                } else {
                    std::string g;
                    for (auto& [n, l] : body) g += l + '\n';
                    Cfg grammar;
                    try {
                        grammar = parse_cfg(g, lineno + 1);
                    } catch (const Error& e) {
                        throw ParseError(lineno, e.what());
                    }
                    for (const auto& t : grammar.terminals())
                        if (t.size() != 1 || !a.contains(t[0]))
                            throw ParseError(lineno, "grammar terminal '" + t + "' is not a letter of the alphabet");
                    initial = InitialSet::context_free(std::move(grammar));
                }
            } else {
                throw ParseError(lineno, "unknown initial set kind '" + kind + "'");
            }
        } else {
            throw ParseError(lineno, "unrecognized line '" + line + "'");
        }
    }
    if (!alphabet) throw ParseError(lines.size(), "missing alphabet declaration");
    if (finite_kind) initial = InitialSet::finite(std::move(finite_words));
    if (!initial) throw ParseError(lines.size(), "missing initial set");
    if (initial->has_empty()) {
        if (mode == Mode::Circular)
            throw ParseError(*initial_line, "the empty word cannot be a circular initial word");
        if (notes)
            notes->push_back("line " + std::to_string(*initial_line) +
                             ": the empty word is kept out of the initial set; it belongs to the language and takes part in no production");
    }
    try {
        return SplicingSystem::make(*alphabet, std::move(*initial), std::move(rules), mode);
    } catch (const Error& e) {
        throw ParseError(*initial_line, e.what());
    }
}

inline SplicingSystem load_system(const std::string& path, std::vector<std::string>* notes = nullptr) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str(), notes);
}

/// Inverse of parse_system up to normalization (sorted words and rules,
/// regular sets as minimal automata).
inline std::string serialize_system(const SplicingSystem& s) {
    std::ostringstream os;
    os << detail::alphabet_line(s.alphabet) << '\n';
    os << "mode " << (s.circular() ? "circular" : "flat") << '\n';
    switch (s.initial.kind()) {
    case InitialSet::Kind::Finite:
        os << "initial finite:";
        if (s.contains_empty) os << " _";
        for (const auto& w : s.initial.words()) os << ' ' << w;
        os << '\n';
        break;
    case InitialSet::Kind::Regular: {
        Dfa d = s.initial.dfa();
        if (s.contains_empty) d = dfa_union(d, dfa_from_words(s.alphabet, {Word{}}));
        os << "initial dfa:\n" << detail::dfa_body(d) << "end\n";
        break;
    }
    case InitialSet::Kind::ContextFree: {
        const Cfg& g = s.initial.grammar();
        if (!s.contains_empty) {
            os << "initial contextfree:\n" << g.to_string() << "end\n";
            break;
        }
        std::string start = "S0";
        while (g.has_variable(start)) start += "0";
        Cfg h(start);
        h.add_rule(start, {Symbol::var(g.start())});
        h.add_rule(start, {});
        for (const auto& r : g.rules()) h.add_rule(r.lhs, r.rhs);
        os << "initial contextfree:\n" << h.to_string() << "end\n";
        break;
    }
    }
    os << "rules:\n";
    for (const auto& r : s.rules) os << (r.is_concat() ? "concat " : "splice ") << r.handles_text() << '\n';
    return os.str();
}

/// Automaton file: an `alphabet` line, then an automaton block body.
inline Dfa parse_dfa(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::optional<Alphabet> a;
    std::vector<std::pair<std::size_t, std::string>> body;
    std::size_t lineno = 0;
    for (std::string l; std::getline(in, l);) {
        ++lineno;
        if (detail::is_comment_line(l)) continue;
        auto tok = detail::split_ws(detail::strip_trailing_comment(l));
        if (tok[0] == "alphabet") {
            if (a) throw ParseError(lineno, "alphabet declared twice");
            a = detail::parse_alphabet_tokens({tok.begin() + 1, tok.end()}, lineno);
            continue;
        }
        if (!a) throw ParseError(lineno, "the alphabet must be declared first");
        body.emplace_back(lineno, l);
    }
    if (!a) throw ParseError(lineno, "missing alphabet declaration");
    return detail::parse_dfa_lines(*a, body);
}

inline std::string serialize_dfa(const Dfa& d) { return detail::alphabet_line(d.alphabet()) + '\n' + detail::dfa_body(d); }

} // namespace splice
