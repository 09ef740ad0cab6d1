#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace splice;

namespace {

WordSet accepted(const Dfa& d, std::size_t n) {
    WordSet out;
    for (const auto& w : oracle::all_words(d.alphabet().letters(), n))
        if (d.accepts(w)) out.insert(w);
    return out;
}

} // namespace

TEST_CASE("regex compilation agrees with std::regex") {
    Alphabet a("ab");
    oracle::Rng rng(11);
    for (int i = 0; i < 150; ++i) {
        std::string re = oracle::random_regex(rng, "ab", 3);
        Dfa d = regex_to_dfa(re, a);
        INFO(re);
        CHECK(accepted(d, 6) == oracle::regex_language(re, "ab", 6));
        CHECK(enumerate_dfa(d, 6) == accepted(d, 6));
        // Printing and reparsing keeps the language.
        CHECK(regex_to_dfa(parse_regex(re).to_string(), a) == d);
    }
}

TEST_CASE("regex syntax") {
    Alphabet a("abc");
    CHECK(regex_to_dfa("a?b", a) == regex_to_dfa("ab|b", a));
    CHECK(regex_to_dfa("_", a).accepts(""));
    CHECK_FALSE(regex_to_dfa("", a).accepts(""));
    CHECK(regex_to_dfa("a b c", a).accepts("abc"));
    CHECK_THROWS_WITH(regex_to_dfa("(ab", a), Catch::Matchers::ContainsSubstring("missing ')'"));
    CHECK_THROWS_AS(regex_to_dfa("*a", a), Error);
    CHECK_THROWS_AS(regex_to_dfa("a|", a), Error);
    CHECK_THROWS_AS(regex_to_dfa("a#", a), Error);
    CHECK_THROWS_AS(regex_to_dfa("d", a), Error);
}

TEST_CASE("normalized automata compare by language") {
    Alphabet a("ab");
    CHECK(regex_to_dfa("(a|b)*", a) == Dfa::universal(a));
    CHECK(regex_to_dfa("(a*b*)*", a) == Dfa::universal(a));
    CHECK(regex_to_dfa("a(ba)*", a) == regex_to_dfa("(ab)*a", a));
    CHECK_FALSE(regex_to_dfa("a*", a) == regex_to_dfa("a+", a));
    CHECK(regex_to_dfa("(a|b)*", a).size() == 1);
}

TEST_CASE("boolean operations match set algebra") {
    Alphabet a("ab");
    oracle::Rng rng(12);
    for (int i = 0; i < 80; ++i) {
        std::string r1 = oracle::random_regex(rng, "ab", 2), r2 = oracle::random_regex(rng, "ab", 2);
        Dfa x = regex_to_dfa(r1, a), y = regex_to_dfa(r2, a);
        WordSet lx = accepted(x, 6), ly = accepted(y, 6);
        WordSet both, either = lx, only;
        either.insert(ly.begin(), ly.end());
        for (const auto& w : lx) (ly.count(w) ? both : only).insert(w);
        INFO(r1 << " vs " << r2);
        CHECK(accepted(dfa_intersect(x, y), 6) == both);
        CHECK(accepted(dfa_union(x, y), 6) == either);
        CHECK(accepted(dfa_difference(x, y), 6) == only);
        WordSet comp;
        for (const auto& w : oracle::all_words("ab", 6))
            if (!lx.count(w)) comp.insert(w);
        CHECK(accepted(dfa_complement(x), 6) == comp);
        WordSet cat;
        for (const auto& u : lx)
            for (const auto& v : ly)
                if (u.size() + v.size() <= 6) cat.insert(u + v);
        CHECK(accepted(dfa_concat({x, y}), 6) == cat);

        auto sub = dfa_subset(x, y);
        if (!sub) {
            REQUIRE(sub.witness);
            CHECK(x.accepts(*sub.witness));
            CHECK_FALSE(y.accepts(*sub.witness));
        }
        auto eq = dfa_equivalent(x, y);
        CHECK(static_cast<bool>(eq) == (x == y));
        if (!eq) CHECK(x.accepts(*eq.witness) != y.accepts(*eq.witness));
    }
}

TEST_CASE("pattern and word automata") {
    Alphabet a("ab");
    Dfa p = dfa_pattern(a, "ab", "ba");
    // The prefix and suffix must not overlap.
    CHECK_FALSE(p.accepts("aba"));
    CHECK(p.accepts("abba"));
    CHECK(p.accepts("abaaba"));
    Dfa w = dfa_from_words(a, {"a", "abb", ""});
    CHECK(accepted(w, 5) == WordSet{"", "a", "abb"});
    CHECK_THROWS_AS(dfa_concat({}), Error);
}

TEST_CASE("shortest word and emptiness") {
    Alphabet a("ab");
    CHECK(shortest_word(regex_to_dfa("b*ab(a|b)", a)) == Word("aba"));
    CHECK(shortest_word(regex_to_dfa("a*", a)) == Word(""));
    CHECK_FALSE(shortest_word(Dfa::empty(a)).has_value());
    CHECK_FALSE(static_cast<bool>(dfa_empty(regex_to_dfa("ab", a))));
    CHECK(static_cast<bool>(dfa_empty(dfa_intersect(regex_to_dfa("a+", a), regex_to_dfa("b+", a)))));
}

TEST_CASE("finiteness with a pumping witness") {
    Alphabet a("ab");
    CHECK(static_cast<bool>(dfa_is_finite(regex_to_dfa("ab|ba|aab", a))));
    CHECK(static_cast<bool>(dfa_is_finite(Dfa::empty(a))));
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        std::string re = oracle::random_regex(rng, "ab", 3);
        Dfa d = regex_to_dfa(re, a);
        auto f = dfa_is_finite(d);
        INFO(re);
        // Infinite iff some accepted word has length in [n, 2n) for an
        // n-state automaton.
        bool long_word = false;
        for (const auto& w : accepted(d, 2 * d.size() - 1))
            if (w.size() >= d.size()) long_word = true;
        CHECK(f.finite == !long_word);
        if (!f) {
            REQUIRE(f.pump);
            CHECK_FALSE(f.pump->loop.empty());
            for (int k = 0; k < 4; ++k) {
                Word w = f.pump->prefix;
                for (int j = 0; j < k; ++j) w += f.pump->loop;
                CHECK(d.accepts(w + f.pump->suffix));
            }
        }
    }
}

TEST_CASE("state languages split the accepted words") {
    Alphabet a("ab");
    Dfa d = regex_to_dfa("a(ab)*b|ba", a);
    for (State q = 0; q < d.size(); ++q) {
        auto sl = state_languages(d, q);
        for (const auto& x : enumerate_dfa(sl.left, 4)) {
            CHECK(d.run(d.start(), x) == q);
            for (const auto& y : enumerate_dfa(sl.right, 4)) CHECK(d.accepts(x + y));
        }
    }
}

TEST_CASE("conjugacy closure agrees with brute-force rotation") {
    Alphabet a("ab");
    oracle::Rng rng(14);
    for (int i = 0; i < 80; ++i) {
        std::string re = oracle::random_regex(rng, "ab", 3);
        Dfa d = regex_to_dfa(re, a);
        WordSet expected;
        for (const auto& w : accepted(d, 6)) expected.merge(oracle::rotations(w));
        INFO(re);
        CHECK(accepted(conjugacy_closure(d), 6) == expected);
    }
    CHECK(conjugacy_closure(regex_to_dfa("a*b", a)) == regex_to_dfa("a*ba*", a));
}
