#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace splice;

namespace {

SplicingSystem flat(const std::string& letters, WordSet init, RuleSet rules) {
    return SplicingSystem::make(Alphabet(letters), InitialSet::finite(std::move(init)), std::move(rules));
}

} // namespace

TEST_CASE("rule image matches products of target words") {
    Alphabet a("ab");
    oracle::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        std::string re = oracle::random_regex(rng, "ab", 2);
        Dfa k = regex_to_dfa(re, a);
        auto r = SplicingRule::splice(oracle::random_handle(rng, "ab"), oracle::random_handle(rng, "ab"),
                                      oracle::random_handle(rng, "ab"), oracle::random_handle(rng, "ab"));
        if (std::bernoulli_distribution(0.3)(rng)) r.usage = Usage::Concat;
        // Words of length <= n in the image come from operands whose
        // lengths add up to at most n.
        WordSet lang = oracle::regex_language(re, "ab", 7), expected;
        for (const auto& u : lang)
            for (const auto& v : lang)
                if (u.size() + v.size() <= 7)
                    for (const auto& w : oracle::naive_products(r, u, v)) expected.insert(w);
        INFO(re << " under " << r.to_string());
        CHECK(enumerate_dfa(rule_image(k, r), 7) == expected);
    }
}

TEST_CASE("alphabetic rule enumeration") {
    CHECK(all_alphabetic_rules(Alphabet("ab")).size() == 81);
    CHECK(all_alphabetic_rules(Alphabet("a")).size() == 16);
}

TEST_CASE("each failing inclusion is reported with the least witness") {
    Alphabet a("ab");
    auto ins = SplicingRule::splice("a", "b", "a", "b");

    Verdict v = decide_equal(oracle::load("sir_ex.spl"), regex_to_dfa("(ab)+", a));
    CHECK_FALSE(v.equal);
    CHECK(v.failing_inclusion == 2);
    CHECK(v.witness == Word("aabb"));

    v = decide_equal(flat("ab", {"ab", "ba"}, {ins}), regex_to_dfa("a+b+", a));
    CHECK(v.failing_inclusion == 1);
    CHECK(v.witness == Word("ba"));

    // Products have length four or more, so aa and aaa must be initial.
    auto aa = SplicingRule::splice("a", "a", "a", "a");
    v = decide_equal(flat("a", {"a"}, {aa}), regex_to_dfa("a+", Alphabet("a")));
    CHECK(v.failing_inclusion == 3);
    CHECK(v.witness == Word("aa"));
    CHECK(decide_equal(flat("a", {"a", "aa", "aaa"}, {aa}), regex_to_dfa("a+", Alphabet("a"))).equal);

    // No b·a seam ever appears, so nothing is produced.
    CHECK(decide_equal(flat("ab", {"ab"}, {SplicingRule::splice("b", "a", "a", "b")}), regex_to_dfa("ab", a)).equal);
    CHECK_THROWS_AS(decide_equal(oracle::load("sir_ex.spl"), regex_to_dfa("a", Alphabet("a"))), Error);
}

TEST_CASE("the empty word in the decider") {
    Alphabet a("ab");
    auto ins = SplicingRule::splice("a", "b", "a", "b");
    Verdict v = decide_equal(flat("ab", {"", "ab"}, {ins}), regex_to_dfa("a(ab)*b|ab", a));
    CHECK(v.failing_inclusion == 1);
    CHECK(v.witness == Word(""));
    v = decide_equal(flat("ab", {"ab"}, {SplicingRule::splice("b", "a", "a", "b")}), regex_to_dfa("_|ab", a));
    CHECK(v.failing_inclusion == 3);
    CHECK(v.witness == Word(""));
    CHECK(decide_equal(flat("ab", {"", "ab"}, {SplicingRule::splice("b", "a", "a", "b")}), regex_to_dfa("_|ab", a)).equal);
}

TEST_CASE("circular targets must be closed under conjugation") {
    Alphabet a("ab");
    auto s = oracle::load("sir_ex2.spl");
    Verdict v = decide_equal(s, regex_to_dfa("a+b+", a));
    CHECK(v.failing_inclusion == 0);
    REQUIRE(v.witness);
    CHECK_FALSE(regex_to_dfa("a+b+", a).accepts(*v.witness));

    auto balanced = oracle::load("dyck_circular.spl");
    // ab and ba are both initial after linearization; (ab|ba) is closed.
    v = decide_equal(balanced, regex_to_dfa("ab|ba", a));
    CHECK_FALSE(v.equal);
    CHECK(v.failing_inclusion == 2);
}

TEST_CASE("verdicts agree with bounded closures") {
    Alphabet a("ab");
    oracle::Rng rng(52);
    oracle::SystemShape shape;
    shape.max_rules = 3;
    shape.concat_share = 0.2;
    for (int i = 0; i < 120; ++i) {
        shape.mode = i % 4 == 0 ? Mode::Circular : Mode::Flat;
        auto s = oracle::random_system(rng, shape);
        // Half the targets are the closure words up to length 6, so that
        // finite languages produce both verdicts.
        Dfa k = i % 2 ? regex_to_dfa(oracle::random_regex(rng, s.alphabet.letters(), 2), s.alphabet)
                      : dfa_from_words(s.alphabet, oracle::naive_closure(s, 6));
        Verdict v = decide_equal(s, k);
        INFO(serialize_system(s));
        WordSet lang = oracle::naive_closure(s, 9), target = enumerate_dfa(k, 9);
        if (v.equal) {
            CHECK(lang == target);
            continue;
        }
        REQUIRE(v.witness);
        const Word& w = *v.witness;
        switch (*v.failing_inclusion) {
        case 0: CHECK(s.circular()); break;
        case 1: CHECK((s.initial.linearized().contains(w) || (w.empty() && s.contains_empty)));
                CHECK_FALSE(k.accepts(w)); break;
        case 2: CHECK_FALSE(k.accepts(w)); break;
        case 3: CHECK(k.accepts(w)); break;
        default: FAIL("unknown inclusion");
        }
        if (w.size() <= 9 && *v.failing_inclusion != 0) CHECK(lang.count(w) != target.count(w));
    }
}

TEST_CASE("alphabetic generability") {
    Alphabet a("ab");
    for (std::string re : {"(ab)+", "(aa)+", "ab|ba", "a+|b+", "(a|b)+", "(a|b)*"}) {
        Dfa k = regex_to_dfa(re, a);
        auto s = alphabetic_generability(k);
        INFO(re);
        REQUIRE(s);
        CHECK(s->alphabetic());
        CHECK_FALSE(s->circular());
        CHECK(oracle::naive_closure(*s, 8) == oracle::regex_language(re, "ab", 8));
        CHECK(decide_equal(*s, k).equal);
    }
    // a^n b has no split into two words of a+b+, so it is never produced;
    // the same holds for a(a|b)*b.
    CHECK_FALSE(alphabetic_generability(regex_to_dfa("a+b+", a)).has_value());
    CHECK_FALSE(alphabetic_generability(regex_to_dfa("a(a|b)*b", a)).has_value());
    CHECK_FALSE(alphabetic_generability(regex_to_dfa("(ab)*a", a)).has_value());
    auto eps = alphabetic_generability(regex_to_dfa("(ab)*", a));
    REQUIRE(eps);
    CHECK(eps->contains_empty);
}
