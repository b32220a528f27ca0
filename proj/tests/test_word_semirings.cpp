#include <doctest.h>

#include <semiring_lab/builtins.hpp>
#include <semiring_lab/word_semiring.hpp>

using namespace semiring_lab;

TEST_CASE("subword closures")
{
    Word w = linear_word(3);  // a1 a2 a3

    SUBCASE("factor closure lists contiguous infixes")
    {
        auto closure = subword_closure({w}, SubwordMode::Factor);
        CHECK(closure.size() == 6);
        CHECK(closure.front() == Word{{"a1"}});
        CHECK(closure.back() == w);
        // a1 a3 is not a factor
        for (const auto & u : closure)
            CHECK(u != Word{{"a1", "a3"}});
    }

    SUBCASE("divisor closure lists sub-multisets")
    {
        auto closure = subword_closure({w}, SubwordMode::Divisor);
        CHECK(closure.size() == 7);  // nonempty subsets of a square-free word
        bool found_skip = false;
        for (const auto & u : closure)
            found_skip = found_skip || u == Word{{"a1", "a3"}};
        CHECK(found_skip);
    }

    SUBCASE("closure of a power word counts multiplicities")
    {
        auto closure = subword_closure({power_word(4)}, SubwordMode::Divisor);
        CHECK(closure.size() == 4);  // a, a^2, a^3, a^4
    }

    SUBCASE("empty input is refused")
    {
        CHECK_THROWS_AS(subword_closure({}, SubwordMode::Factor), std::invalid_argument);
    }
}

TEST_CASE("flat word semiring on a1 a2")
{
    WordSemiring ws = flat_word_semiring({.words = {linear_word(2)}});
    const FiniteSemiring & s = ws.algebra;
    REQUIRE(s.size() == 4);  // a1, a2, a1*a2, 0
    REQUIRE(verify_ai_semiring(s).ok());

    int a1 = ws.index_of_word(Word{{"a1"}});
    int a2 = ws.index_of_word(Word{{"a2"}});
    int a12 = ws.index_of_word(Word{{"a1", "a2"}});
    REQUIRE(a1 >= 0);
    REQUIRE(a2 >= 0);
    REQUIRE(a12 >= 0);

    CHECK(s.mul(a1, a2) == a12);            // concatenation stays in the closure
    CHECK(s.mul(a2, a1) == ws.zero_index);  // a2 a1 does not
    CHECK(s.add(a1, a2) == ws.zero_index);  // flat addition
    CHECK(s.add(a1, a1) == a1);
    CHECK_FALSE(ws.one_index.has_value());

    // 0-cancellativity: uv = uw != 0 forces v = w
    CHECK(zero_cancellative(s, ws.zero_index));
}

TEST_CASE("identity-only specs give the two-element flat monoid")
{
    WordSemiring m = flat_word_semiring({.words = {}, .with_identity = true});
    CHECK(m.algebra.size() == 2);
    CHECK(find_isomorphism(m.algebra, builtin_M2()).map.has_value());

    WordSemiring mc = divisibility_semiring({.words = {Word{}}, .with_identity = true});
    CHECK(mc.algebra.size() == 2);
    CHECK(find_isomorphism(mc.algebra, builtin_M2()).map.has_value());

    // the empty word without with_identity is an input error
    CHECK_THROWS_AS(flat_word_semiring({.words = {Word{}}}), std::invalid_argument);
}

TEST_CASE("divisibility semiring on the single letter a is S_53")
{
    WordSemiring ws = divisibility_semiring({.words = {power_word(1)}, .with_identity = true});
    REQUIRE(ws.algebra.size() == 3);
    REQUIRE(verify_ai_semiring(ws.algebra).ok());
    CHECK(find_isomorphism(ws.algebra, builtin_S53()).map.has_value());
}

TEST_CASE("divisibility addition is the exponent supremum")
{
    WordSemiring ws = divisibility_semiring({.words = {linear_word(2)}});
    const FiniteSemiring & s = ws.algebra;
    int a1 = ws.index_of_word(Word{{"a1"}});
    int a2 = ws.index_of_word(Word{{"a2"}});
    int a12 = ws.index_of_word(Word{{"a1", "a2"}});

    CHECK(s.add(a1, a2) == a12);  // sup inside the closure
    CHECK(s.add(a1, a12) == a12);
    CHECK(s.mul(a1, a1) == ws.zero_index);  // a1^2 leaves the closure

    // sup leaving the closure collapses to 0
    WordSemiring pw = divisibility_semiring({.words = {power_word(2), Word{{"b"}}}});
    int a = pw.index_of_word(power_word(1));
    int b = pw.index_of_word(Word{{"b"}});
    CHECK(pw.algebra.add(a, b) == pw.zero_index);  // a*b divides no input word

    REQUIRE(verify_ai_semiring(pw.algebra).ok());
}

TEST_CASE("flat and divisibility variants share carrier and multiplication")
{
    WordSemiringSpec spec{.words = {linear_word(3)}, .commutative = true, .with_identity = true};
    WordSemiring flat = flat_word_semiring(spec);
    WordSemiring divis = divisibility_semiring(spec);
    CHECK(flat.algebra.elements == divis.algebra.elements);
    CHECK(flat.algebra.mul_table == divis.algebra.mul_table);
    CHECK(flat.algebra.add_table != divis.algebra.add_table);
    CHECK(verify_ai_semiring(flat.algebra).ok());
    CHECK(verify_ai_semiring(divis.algebra).ok());
}

TEST_CASE("carrier sizes match the closed formulas")
{
    for (int n = 1; n <= 6; ++n) {
        // square-free linear word: divisors are the 2^n - 1 nonempty subsets
        WordSemiring divis = divisibility_semiring({.words = {linear_word(n)}});
        CHECK(divis.algebra.size() == (1 << n));

        // noncommutative factors: n(n+1)/2 infixes
        WordSemiring flat = flat_word_semiring({.words = {linear_word(n)}});
        CHECK(flat.algebra.size() == n * (n + 1) / 2 + 1);
    }
}

TEST_CASE("every constructed word semiring passes the axiom check")
{
    std::vector<WordSemiringSpec> specs = {
        {.words = {linear_word(4)}},
        {.words = {linear_word(4)}, .commutative = true},
        {.words = {linear_word(3)}, .with_identity = true},
        {.words = {power_word(3), Word{{"b", "b"}}}, .commutative = true},
    };
    for (const auto & spec : specs) {
        WordSemiring flat = flat_word_semiring(spec);
        CHECK(verify_ai_semiring(flat.algebra).ok());
        CHECK(multiplication_order_compatible(flat.algebra));
        if (spec.commutative) {
            WordSemiring divis = divisibility_semiring(spec);
            CHECK(verify_ai_semiring(divis.algebra).ok());
            CHECK(multiplication_order_compatible(divis.algebra));
        }
    }

    // divisibility order without commutativity is rejected
    WordSemiringSpec bad{.words = {linear_word(2)}, .commutative = false,
        .order = OrderKind::Divisibility};
    CHECK_THROWS_AS(detail::build_word_semiring(bad), std::invalid_argument);
}

TEST_CASE("truncated max-plus")
{
    SUBCASE("tables")
    {
        FiniteSemiring s = truncated_max_plus(3);
        REQUIRE(s.size() == 4);
        REQUIRE(verify_ai_semiring(s).ok());
        int top = s.require_index("top");
        CHECK(s.add(s.require_index("1"), s.require_index("2")) == s.require_index("2"));
        CHECK(s.mul(s.require_index("1"), s.require_index("1")) == s.require_index("2"));
        CHECK(s.mul(s.require_index("1"), s.require_index("2")) == top);  // 3 saturates
        CHECK(s.mul(top, s.require_index("0")) == top);
        CHECK_THROWS_AS(truncated_max_plus(0), std::invalid_argument);
    }

    SUBCASE("isomorphic to the divisibility monoid of a single power word")
    {
        for (int cutoff = 1; cutoff <= 5; ++cutoff) {
            WordSemiring ws = divisibility_semiring(
                {.words = {power_word(cutoff - 1)}, .with_identity = true});
            FiniteSemiring trunc = truncated_max_plus(cutoff);
            REQUIRE(ws.algebra.size() == trunc.size());
            auto iso = find_isomorphism(ws.algebra, trunc);
            REQUIRE(iso.map.has_value());
            // a^j must land on j: the isomorphism is unique and exponent-preserving
            for (int j = 0; j < cutoff; ++j)
                CHECK(trunc.elements[(*iso.map)(ws.index_of_word(power_word(j)))]
                    == std::to_string(j));
        }
    }
}

TEST_CASE("regularization by an absorbing element")
{
    for (const auto & name : builtin_names()) {
        FiniteSemiring s = builtin(name);
        FiniteSemiring inf = s_infinity(s);
        REQUIRE(inf.size() == s.size() + 1);
        REQUIRE(verify_ai_semiring(inf).ok());
        int e = inf.require_index("inf");
        for (int a = 0; a < inf.size(); ++a) {
            CHECK(inf.add(a, e) == e);
            CHECK(inf.add(e, a) == e);
            CHECK(inf.mul(a, e) == e);
            CHECK(inf.mul(e, a) == e);
        }
        // the original algebra sits inside as a subalgebra on the old indices
        for (int a = 0; a < s.size(); ++a)
            for (int b = 0; b < s.size(); ++b) {
                CHECK(inf.add(a, b) == s.add(a, b));
                CHECK(inf.mul(a, b) == s.mul(a, b));
            }
    }
}

TEST_CASE("subdirect decomposition of the max-plus segment")
{
    SubdirectReport r = subdirect_maxplus_check(6);
    CHECK(r.segment == 6);
    CHECK(r.injective);
    CHECK(r.operations_preserved);
    REQUIRE(r.coordinate_surjective.size() == 6);
    for (bool s : r.coordinate_surjective)
        CHECK(s);
    CHECK(r.ok());
    CHECK_FALSE(r.note.empty());
    CHECK_THROWS_AS(subdirect_maxplus_check(0), std::invalid_argument);
}

TEST_CASE("word list parsing")
{
    SUBCASE("noncommutative")
    {
        auto words = parse_word_list("a*b, b, a*b*a", false);
        REQUIRE(words.size() == 3);
        CHECK(words[0] == Word{{"a", "b"}});
        CHECK(words[2] == Word{{"a", "b", "a"}});
    }

    SUBCASE("commutative exponents")
    {
        auto words = parse_word_list("a^3 * b, 1", true);
        REQUIRE(words.size() == 2);
        CHECK(words[0] == Word{{"a", "a", "a", "b"}});
        CHECK(words[1] == Word{});
    }

    SUBCASE("errors")
    {
        CHECK_THROWS_AS(parse_word_list("a^2", false), ParseError);
        CHECK_THROWS_AS(parse_word_list("a,,b", false), ParseError);
        CHECK_THROWS_AS(parse_word_list("a^x", true), ParseError);
        CHECK_THROWS_AS(parse_word_list("a b", false), ParseError);
    }
}

TEST_CASE("index_of_word canonicalizes in commutative mode")
{
    WordSemiring ws = divisibility_semiring({.words = {linear_word(2)}});
    CHECK(ws.index_of_word(Word{{"a2", "a1"}}) == ws.index_of_word(Word{{"a1", "a2"}}));
    CHECK(ws.index_of_word(Word{{"a3"}}) == -1);

    WordSemiring flat = flat_word_semiring({.words = {linear_word(2)}});
    CHECK(flat.index_of_word(Word{{"a2", "a1"}}) == -1);
}
