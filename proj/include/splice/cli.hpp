#pragma once

// Command dispatch for the `splicer` tool. run_command never touches the
// process streams directly, so it can be driven in-process.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "closure.hpp"
#include "decider.hpp"
#include "io.hpp"
#include "synthesis.hpp"
#include "transform.hpp"

namespace splice {

namespace detail {

/// Exit status for invalid input; budget exhaustion uses 3.
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;

inline std::string show_word(const Word& w) { return w.empty() ? "_" : w; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void print_words(std::ostream& out, const WordSet& words) {
    for (const auto& w : words) out << show_word(w) << '\n';
}

inline std::string show_operand(const OperandRef& ref) {
    return ref.from_step ? "[" + std::to_string(ref.step + 1) + "]" : show_word(ref.word);
}

inline void print_trace(std::ostream& out, const SplicingSystem& s, const ProductionSequence& seq) {
    if (seq.steps.empty()) {
        out << "initial " << show_word(seq.result()) << '\n';
        return;
    }
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& p = seq.steps[i];
        out << '[' << i + 1 << "] " << p.rule.to_string() << ' ' << show_operand(p.left) << ' ' << show_operand(p.right);
        if (s.circular()) out << " rotate " << p.left_rotation << ' ' << p.right_rotation;
        else out << " at " << p.cut;
        out << " -> " << p.result << '\n';
    }
}

inline Word parse_word_arg(const std::string& w) { return w == "_" ? Word{} : w; }

/// First word of the symmetric difference in length-lex order.
inline std::optional<Word> first_difference(const WordSet& a, const WordSet& b) {
    std::optional<Word> best;
    auto consider = [&](const WordSet& x, const WordSet& y) {
        for (const auto& w : x)
            if (!y.count(w)) {
                if (!best || LengthLex{}(w, *best)) best = w;
                return;
            }
    };
    consider(a, b);
    consider(b, a);
    return best;
}

} // namespace detail

/// Runs one `splicer` command; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Splicing systems: closures, membership, equality decisions, grammar synthesis", "splicer"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string file, word, regex, dfa_file, alphabet_text, output;
    std::size_t max_len = 0, budget = 1'000'000;
    bool linearize_flag = false, trace = false;

    auto* closure_cmd = app.add_subcommand("closure", "List the language up to a length bound");
    closure_cmd->add_option("file", file, "System file")->required();
    closure_cmd->add_option("--max-len", max_len, "Length bound")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    closure_cmd->add_flag("--linearize", linearize_flag, "Print every conjugate of circular words");

    auto* member_cmd = app.add_subcommand("member", "Test membership of a word (exit 0 yes, 1 no)");
    member_cmd->add_option("file", file, "System file")->required();
    member_cmd->add_option("word", word, "Word, or _ for the empty word")->required();
    member_cmd->add_flag("--trace", trace, "Print a production sequence");
    member_cmd->add_option("--budget", budget, "Search budget");

    auto* decide_cmd = app.add_subcommand("decide-equal", "Decide whether the language equals a regular language");
    decide_cmd->add_option("file", file, "System file")->required();
    auto* regex_opt = decide_cmd->add_option("--regex", regex, "Target regular expression");
    auto* dfa_opt = decide_cmd->add_option("--dfa", dfa_file, "Target automaton file");
    regex_opt->excludes(dfa_opt);
    dfa_opt->excludes(regex_opt);

    auto* gen_cmd = app.add_subcommand("generable", "Find an alphabetic flat system for a regular language");
    gen_cmd->add_option("--alphabet", alphabet_text, "Letters, separated by spaces")->required();
    gen_cmd->add_option("--regex", regex, "Regular expression")->required();

    auto* complete_cmd = app.add_subcommand("complete", "Print the completed system");
    complete_cmd->add_option("file", file, "System file")->required();
    auto* split_cmd = app.add_subcommand("split", "Print the heterogeneous form of the completed system");
    split_cmd->add_option("file", file, "System file")->required();
    auto* flat_cmd = app.add_subcommand("to-flat", "Print the flat system for a circular one");
    flat_cmd->add_option("file", file, "System file")->required();

    auto* synth_cmd = app.add_subcommand("synthesize", "Write a context-free grammar for the language");
    synth_cmd->add_option("file", file, "System file")->required();
    synth_cmd->add_option("-o,--output", output, "Grammar file (default: standard output)");

    auto* enum_cmd = app.add_subcommand("enumerate", "List the words of a grammar up to a length bound");
    enum_cmd->add_option("grammar", file, "Grammar file")->required();
    enum_cmd->add_option("--max-len", max_len, "Length bound")->required();

    auto* check_cmd = app.add_subcommand("check", "Compare the synthesized grammar with the closure");
    check_cmd->add_option("file", file, "System file")->required();
    check_cmd->add_option("--max-len", max_len, "Length bound")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : detail::exit_usage;
    }

    try {
        auto load = [&] {
            std::vector<std::string> notes;
            SplicingSystem s = parse_system(detail::read_file(file), &notes);
            for (const auto& n : notes) err << "note: " << n << '\n';
            return s;
        };

        if (closure_cmd->parsed()) {
            SplicingSystem s = load();
            if (s.circular() && !linearize_flag) {
                for (const auto& c : closure_bounded_circular(s, max_len)) out << c.representative() << '\n';
            } else {
                detail::print_words(out, closure_language(s, max_len));
            }
            return 0;
        }
        if (member_cmd->parsed()) {
            SplicingSystem s = load();
            Word w = detail::parse_word_arg(word);
            s.alphabet.require(w);
            MemberResult r = member(s, w, budget);
            out << (r.member ? "yes" : "no") << '\n';
            if (r.member && trace && r.trace) detail::print_trace(out, s, *r.trace);
            return r.member ? 0 : 1;
        }
        if (decide_cmd->parsed()) {
            SplicingSystem s = load();
            if (regex.empty() && dfa_file.empty()) {
                err << "decide-equal: give --regex or --dfa\n";
                return detail::exit_usage;
            }
            Dfa k = dfa_file.empty() ? regex_to_dfa(regex, s.alphabet) : parse_dfa(detail::read_file(dfa_file));
            Verdict v = decide_equal(s, k);
            if (v.equal) out << "EQUAL\n";
            else out << "NOT-EQUAL " << *v.failing_inclusion << ' ' << detail::show_word(*v.witness) << '\n';
            return v.equal ? 0 : 1;
        }
        if (gen_cmd->parsed()) {
            Alphabet a = detail::parse_alphabet_tokens(detail::split_ws(alphabet_text), 1);
            auto s = alphabetic_generability(regex_to_dfa(regex, a));
            if (!s) {
                out << "NONE\n";
                return 1;
            }
            out << serialize_system(*s);
            return 0;
        }
        if (complete_cmd->parsed()) {
            out << serialize_system(complete(load()));
            return 0;
        }
        if (split_cmd->parsed()) {
            out << serialize_system(to_heterogeneous(complete(load())));
            return 0;
        }
        if (flat_cmd->parsed()) {
            out << serialize_system(circular_to_flat(load()));
            return 0;
        }
        if (synth_cmd->parsed()) {
            std::string text = synthesize(load()).to_string();
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output);
                if (!f) throw Error("cannot write '" + output + "'");
                f << text;
            }
            return 0;
        }
        if (enum_cmd->parsed()) {
            Cfg g = parse_cfg(detail::read_file(file));
            for (const auto& t : g.terminals())
                if (t.size() != 1) throw Error("grammar terminal '" + t + "' is not a single letter");
            detail::print_words(out, enumerate_cfg(g, max_len));
            return 0;
        }
        if (check_cmd->parsed()) {
            SplicingSystem s = load();
            WordSet from_grammar = enumerate_cfg(synthesize(s), max_len);
            WordSet from_closure = closure_language(s, max_len);
            if (auto d = detail::first_difference(from_grammar, from_closure)) {
                out << "MISMATCH " << detail::show_word(*d) << (from_grammar.count(*d) ? " (grammar only)" : " (closure only)")
                    << '\n';
                return 1;
            }
            out << "OK " << from_closure.size() << " words up to length " << max_len << '\n';
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return detail::exit_budget;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return detail::exit_usage;
    }
    return detail::exit_usage;
}

} // namespace splice
