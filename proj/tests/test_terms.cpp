#include <doctest.h>

#include <semiring_lab/builtins.hpp>
#include <semiring_lab/terms.hpp>

#include <semiring_lab/naive_reference.hpp>

using namespace semiring_lab;

TEST_CASE("word and term evaluation on S_53")
{
    FiniteSemiring s = builtin_S53();
    int zero = s.require_index("0"), a = s.require_index("a"), one = s.require_index("1");
    Assignment phi{{"x", a}, {"y", one}};

    CHECK(eval(s, Word{{"x"}}, phi) == a);
    CHECK(eval(s, Word{{"x", "x"}}, phi) == zero);          // a * a = 0
    CHECK(eval(s, Word{{"x", "y", "x"}}, phi) == zero);     // a * 1 * a = 0
    CHECK(eval(s, Term::of({Word{{"x"}}, Word{{"y"}}}), phi) == a);  // a + 1 = a
    CHECK_THROWS_AS(eval(s, Word{{"z"}}, phi), std::invalid_argument);
}

TEST_CASE("evaluation agrees with the naive reference on a random corpus")
{
    std::vector<FiniteSemiring> algebras;
    for (const auto & name : builtin_names())
        algebras.push_back(builtin(name));
    std::vector<Identity> corpus = identity_corpus(60, 424242);
    for (const auto & s : algebras) {
        for (const auto & id : corpus) {
            SatResult r = satisfies(s, id);
            REQUIRE(r.outcome != Outcome::TooLarge);
            CHECK((r.outcome == Outcome::Holds) == naive::holds(s, id));
            if (r.outcome == Outcome::Counterexample) {
                // the reported witness genuinely separates the two sides,
                // also under the independent evaluator
                CHECK(naive::eval_term(s, id.lhs, r.counterexample)
                    != naive::eval_term(s, id.rhs, r.counterexample));
            }
        }
    }
}

TEST_CASE("satisfies on hand-picked identities")
{
    FiniteSemiring s53 = builtin_S53();

    SUBCASE("additive commutativity holds everywhere")
    {
        Identity id = parse_identity("x + y = y + x");
        CHECK(id.trivial());  // canonicalization sorts the words
        for (const auto & name : builtin_names())
            CHECK(satisfies(builtin(name), id).outcome == Outcome::Holds);
    }

    SUBCASE("x = x*x fails in S_53 with a valid counterexample")
    {
        Identity id = parse_identity("x = x*x");
        SatResult r = satisfies(s53, id);
        REQUIRE(r.outcome == Outcome::Counterexample);
        CHECK(r.counterexample.at("x") == s53.require_index("a"));
    }

    SUBCASE("multiplicative commutativity separates S_53 from B_2^1")
    {
        Identity id = parse_identity("x*y = y*x");
        CHECK(satisfies(s53, id).outcome == Outcome::Holds);
        CHECK(satisfies(builtin_B21(), id).outcome == Outcome::Counterexample);
    }

    SUBCASE("a tiny budget triggers refusal, not sampling")
    {
        Identity id = parse_identity("x1*x2*x3*x4 + y = x1*x2*x3*x4");
        SatResult r = satisfies(s53, id, 10);
        CHECK(r.outcome == Outcome::TooLarge);
        CHECK(r.ops == 0);
    }
}

TEST_CASE("sampling is seeded and only ever reports verified counterexamples")
{
    FiniteSemiring s = builtin_B21();
    Identity falsified = parse_identity("x*y = y*x");
    SampleResult r1 = sample_satisfies(s, falsified, 1000, 7);
    SampleResult r2 = sample_satisfies(s, falsified, 1000, 7);
    REQUIRE(r1.counterexample_found);
    CHECK(r1.counterexample == r2.counterexample);  // deterministic for a fixed seed
    CHECK(eval(s, falsified.lhs, r1.counterexample) != eval(s, falsified.rhs, r1.counterexample));

    Identity holds = parse_identity("x + y = y + x + x");
    CHECK_FALSE(sample_satisfies(s, holds, 1000, 7).counterexample_found);
}

TEST_CASE("preceq")
{
    Term x = parse_term("x"), xy = parse_term("x + y");

    SUBCASE("x preceq x + y in every additively idempotent semiring")
    {
        for (const auto & name : builtin_names())
            CHECK(preceq(builtin(name), x, xy).outcome == Outcome::Holds);
    }

    SUBCASE("failure direction")
    {
        // x + y preceq x would force y + x = x for all y
        CHECK(preceq(builtin_S53(), xy, x).outcome == Outcome::Counterexample);
    }

    SUBCASE("transitivity spot check on S_53")
    {
        FiniteSemiring s = builtin_S53();
        Term u = parse_term("x*x"), v = parse_term("x*x + x"), w = parse_term("x*x + x + y");
        REQUIRE(preceq(s, u, v).outcome == Outcome::Holds);
        REQUIRE(preceq(s, v, w).outcome == Outcome::Holds);
        CHECK(preceq(s, u, w).outcome == Outcome::Holds);
    }
}

TEST_CASE("regular identities are exactly the identities of M_2")
{
    FiniteSemiring m2 = builtin_M2();
    for (const auto & id : identity_corpus(120, 99991)) {
        SatResult r = satisfies(m2, id);
        REQUIRE(r.outcome != Outcome::TooLarge);
        CHECK((r.outcome == Outcome::Holds) == is_regular(id));
    }
}

TEST_CASE("bounded isoterm check")
{
    SUBCASE("x is an isoterm for S_53 up to length 5")
    {
        IsotermResult r = is_isoterm_bounded(builtin_S53(), Word{{"x"}}, 5);
        CHECK(r.verdict == IsotermVerdict::MinimalUpToBound);
    }

    SUBCASE("x*x is not an isoterm for M_2")
    {
        IsotermResult r = is_isoterm_bounded(builtin_M2(), Word{{"x", "x"}}, 3);
        REQUIRE(r.verdict == IsotermVerdict::Violator);
        REQUIRE(r.violator.has_value());
        // the violator really sits below x*x
        CHECK(preceq(builtin_M2(), Term::of({*r.violator}), parse_term("x*x")).outcome
            == Outcome::Holds);
    }

    SUBCASE("bound below the word length is refused")
    {
        CHECK_THROWS_AS(is_isoterm_bounded(builtin_M2(), Word{{"x", "x"}}, 1),
            std::invalid_argument);
    }
}

TEST_CASE("nilpotent identity shape")
{
    Identity id = nilpotent_identity(2);
    CHECK(format_identity(id) == "x1*x2*x3 + y = x1*x2*x3");
    CHECK_FALSE(is_regular(id));
    CHECK_THROWS_AS(nilpotent_identity(0), std::invalid_argument);

    // in the subalgebra {0, a} of S_7 every product of two elements is 0,
    // which is the additive greatest element; S_7 itself has an identity
    // element, so no nilpotency degree works there
    FiniteSemiring s7 = builtin_S7();
    FiniteSemiring sub = generate_subalgebra(s7, {s7.require_index("a")}).algebra;
    CHECK(satisfies(sub, nilpotent_identity(1)).outcome == Outcome::Holds);
    CHECK(satisfies(s7, nilpotent_identity(1)).outcome == Outcome::Counterexample);
    CHECK(satisfies(s7, nilpotent_identity(2)).outcome == Outcome::Counterexample);
}

TEST_CASE("parsing and formatting")
{
    SUBCASE("round trip through the canonical form")
    {
        Identity id = parse_identity("  b*a + a + a   =  c ");
        CHECK(format_identity(id) == "a + b*a = c");
        CHECK(parse_identity(format_identity(id)) == id);
    }

    SUBCASE("canonicalization sorts and deduplicates words")
    {
        Term t = parse_term("y + x + y");
        CHECK(t.words.size() == 2);
        CHECK(format_term(t) == "x + y");
    }

    SUBCASE("errors carry a position")
    {
        CHECK_THROWS_AS(parse_identity("x + = y"), ParseError);
        CHECK_THROWS_AS(parse_identity("x"), ParseError);
        CHECK_THROWS_AS(parse_term("x * * y"), ParseError);
        CHECK_THROWS_AS(parse_term("x + y z"), ParseError);
        try {
            parse_identity("x =");
            FAIL("expected a ParseError");
        } catch (const ParseError & e) {
            CHECK(e.position == 3);
        }
    }

    SUBCASE("underscores and digits are variable characters")
    {
        Term t = parse_term("x_1*y2");
        REQUIRE(t.words.size() == 1);
        CHECK(t.words[0].letters == std::vector<std::string>{"x_1", "y2"});
    }
}

TEST_CASE("word evaluation is permutation invariant on commutative algebras")
{
    FiniteSemiring s = builtin_S53();
    Word w{{"x", "y", "z", "x"}};
    std::vector<std::string> perm = w.letters;
    std::sort(perm.begin(), perm.end());
    do {
        for (int x = 0; x < s.size(); ++x)
            for (int y = 0; y < s.size(); ++y)
                for (int z = 0; z < s.size(); ++z) {
                    Assignment phi{{"x", x}, {"y", y}, {"z", z}};
                    CHECK(eval(s, Word{perm}, phi) == eval(s, w, phi));
                }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("identity corpus is deterministic and within its advertised shape")
{
    auto c1 = identity_corpus(25, 5);
    auto c2 = identity_corpus(25, 5);
    REQUIRE(c1.size() == 25);
    for (std::size_t i = 0; i < c1.size(); ++i)
        CHECK(c1[i] == c2[i]);
    for (const auto & id : c1) {
        for (const auto & t : {id.lhs, id.rhs}) {
            CHECK(t.words.size() <= 4);
            for (const auto & w : t.words)
                CHECK(w.length() <= 4);
        }
        for (const auto & v : id.content())
            CHECK((v == "x1" || v == "x2" || v == "x3"));
    }
}
