#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace splice;

namespace {

oracle::SystemShape alphabetic_shape(Mode mode) {
    oracle::SystemShape shape;
    shape.max_rules = 3;
    shape.concat_share = 0.25;
    shape.regular_share = 0.2;
    shape.mode = mode;
    return shape;
}

std::size_t concat_steps(const ProductionSequence& seq) {
    return static_cast<std::size_t>(
        std::count_if(seq.steps.begin(), seq.steps.end(), [](const Production& p) { return p.rule.is_concat(); }));
}

} // namespace

TEST_CASE("completion fills empty handles with every letter") {
    Alphabet a("ab");
    RuleSet one{SplicingRule::splice("", "", "a", "b")};
    RuleSet done = complete(one, a);
    CHECK(done.size() == 9);
    CHECK(done.count(SplicingRule::splice("b", "a", "a", "b")));
    CHECK(is_complete(done, a));
    CHECK_FALSE(is_complete(one, a));
    CHECK(complete(RuleSet{SplicingRule::splice("a", "b", "a", "b")}, a).size() == 1);
    CHECK(complete(RuleSet{SplicingRule::concat("", "", "", "")}, a).size() == 81);
    CHECK_THROWS_AS(complete(RuleSet{SplicingRule::splice("ab", "", "", "")}, a), Error);
}

TEST_CASE("completion keeps the language") {
    oracle::Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        auto s = oracle::random_system(rng, alphabetic_shape(i % 4 == 0 ? Mode::Circular : Mode::Flat));
        INFO(serialize_system(s));
        CHECK(oracle::naive_closure(complete(s), 7) == oracle::naive_closure(s, 7));
    }
}

TEST_CASE("heterogeneous form of a mixed system") {
    auto s = complete(oracle::load("exhomogeneous.spl"));
    auto h = to_heterogeneous(s);
    CHECK(h.rules.count(SplicingRule::splice("a", "b", "a", "b")));
    CHECK(h.rules.count(SplicingRule::splice("c", "", "", "b")) == 0);
    CHECK(h.rules.count(SplicingRule::splice("c", "a", "", "b")));
    CHECK(h.rules.count(SplicingRule::splice("c", "a", "c", "b")));
    CHECK(h.rules.count(SplicingRule::concat("", "c", "", "b")));
    CHECK(h.rules.count(SplicingRule::concat("b", "c", "a", "b")));
    for (const auto& r : h.rules) CHECK((r.is_concat() || r.pure()));
    CHECK(closure_bounded(h, 9) == oracle::naive_closure(oracle::load("exhomogeneous.spl"), 9));
    CHECK_THROWS_AS(to_heterogeneous(oracle::load("exhomogeneous.spl")), Error);
}

TEST_CASE("heterogeneous form keeps the language") {
    oracle::Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        auto s = complete(oracle::random_system(rng, alphabetic_shape(Mode::Flat)));
        auto h = to_heterogeneous(s);
        INFO(serialize_system(s));
        CHECK(oracle::naive_closure(h, 7) == oracle::naive_closure(s, 7));
    }
}

TEST_CASE("circular rules expand to four flat rules") {
    auto r = SplicingRule::splice("a", "b", "c", "d");
    CHECK(circular_expansion(r) == RuleSet{SplicingRule::splice("a", "b", "c", "d"), SplicingRule::splice("d", "c", "b", "a"),
                                           SplicingRule::concat("b", "a", "c", "d"), SplicingRule::concat("c", "d", "b", "a")});
    CHECK_THROWS_AS(circular_expansion(SplicingRule::splice("ab", "b", "c", "d")), Error);
    CHECK_THROWS_AS(circular_to_flat(oracle::load("sir_ex.spl")), Error);
}

TEST_CASE("flat simulation of circular systems") {
    oracle::Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        auto s = oracle::random_system(rng, alphabetic_shape(Mode::Circular));
        auto f = circular_to_flat(s);
        INFO(serialize_system(s));
        CHECK_FALSE(f.circular());
        CHECK(oracle::naive_closure(f, 7) == oracle::naive_closure(s, 7));
    }
    auto sir = circular_to_flat(oracle::load("sir_ex2.spl"));
    CHECK(closure_bounded(sir, 4) == WordSet{"ab", "ba", "aabb", "abba", "bbaa", "baab"});
}

TEST_CASE("a concatenation after an insertion is moved forward") {
    Alphabet a("ab");
    auto ins = SplicingRule::splice("a", "b", "a", "b");
    auto cat = SplicingRule::concat("", "", "", "");
    auto s = SplicingSystem::make(a, InitialSet::finite({"ab"}), {ins, cat});
    ProductionSequence seq;
    seq.steps.push_back({ins, OperandRef::initial("ab"), OperandRef::initial("ab"), 1, 0, 0, "aabb"});
    seq.steps.push_back({cat, OperandRef::result_of(0), OperandRef::initial("ab"), 4, 0, 0, "aabbab"});
    REQUIRE(replay_sequence(s, seq) == "aabbab");
    CHECK_FALSE(concatenations_first(seq));
    auto out = normalize_sequence(s, seq);
    CHECK(replay_sequence(s, out) == "aabbab");
    CHECK(concatenations_first(out));
    CHECK(out.size() == 2);
    CHECK(out.steps.front().rule.is_concat());

    // The insertion lands inside the right operand of the concatenation.
    ProductionSequence right;
    right.steps.push_back({ins, OperandRef::initial("ab"), OperandRef::initial("ab"), 1, 0, 0, "aabb"});
    right.steps.push_back({cat, OperandRef::initial("ab"), OperandRef::result_of(0), 2, 0, 0, "abaabb"});
    out = normalize_sequence(s, right);
    CHECK(replay_sequence(s, out) == "abaabb");
    CHECK(concatenations_first(out));

    // Both operands are the same intermediate word.
    ProductionSequence self;
    self.steps.push_back({ins, OperandRef::initial("ab"), OperandRef::initial("ab"), 1, 0, 0, "aabb"});
    self.steps.push_back({cat, OperandRef::result_of(0), OperandRef::result_of(0), 4, 0, 0, "aabbaabb"});
    out = normalize_sequence(s, self);
    CHECK(replay_sequence(s, out) == "aabbaabb");
    CHECK(concatenations_first(out));
    CHECK(concat_steps(out) == 1);
}

TEST_CASE("dead steps are pruned") {
    Alphabet a("ab");
    auto ins = SplicingRule::splice("a", "b", "a", "b");
    auto s = SplicingSystem::make(a, InitialSet::finite({"ab"}), {ins});
    ProductionSequence seq;
    seq.steps.push_back({ins, OperandRef::initial("ab"), OperandRef::initial("ab"), 1, 0, 0, "aabb"});
    seq.steps.push_back({ins, OperandRef::initial("ab"), OperandRef::initial("ab"), 1, 0, 0, "aabb"});
    seq.steps.push_back({ins, OperandRef::result_of(1), OperandRef::initial("ab"), 2, 0, 0, "aaabbb"});
    auto pruned = detail::prune_dead(seq);
    CHECK(pruned.size() == 2);
    CHECK(replay_sequence(s, pruned) == "aaabbb");
}

TEST_CASE("normalization on random sequences") {
    oracle::Rng rng(44);
    std::size_t done = 0;
    while (done < 150) {
        const std::string letters = std::string("ab").substr(0, oracle::pick(rng, 1, 2));
        RuleSet rules;
        for (std::size_t i = oracle::pick(rng, 2, 4); i > 0; --i) {
            auto h = [&] { return oracle::random_handle(rng, letters); };
            auto l = [&] { return oracle::random_word(rng, letters, 1, 1); };
            if (std::bernoulli_distribution(0.5)(rng)) rules.insert(SplicingRule::splice(l(), l(), h(), h()));
            else rules.insert(SplicingRule::concat(h(), h(), h(), h()));
        }
        WordSet init;
        for (std::size_t i = oracle::pick(rng, 1, 3); i > 0; --i) init.insert(oracle::random_word(rng, letters, 1, 3));
        auto s = SplicingSystem::make(Alphabet(letters), InitialSet::finite(init), rules);
        ProductionSequence seq = oracle::random_sequence(rng, s, 6);
        if (seq.steps.empty()) continue;
        ++done;
        INFO(serialize_system(s));
        auto out = normalize_sequence(s, seq);
        CHECK(replay_sequence(s, out) == seq.result());
        CHECK(concatenations_first(out));
        CHECK(concat_steps(out) <= concat_steps(seq));
    }
}
