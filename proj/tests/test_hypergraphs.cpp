#include <doctest.h>

#include <semiring_lab/hypergraph.hpp>

using namespace semiring_lab;

TEST_CASE("Kneser instance construction")
{
    SUBCASE("counts match the closed formulas")
    {
        KneserInstance h31 = kneser(3, 1);
        CHECK(h31.masks.size() == 3);
        CHECK(h31.hypergraph.hyperedges.size() == 1);  // the unique singleton partition

        KneserInstance h32 = kneser(3, 2);
        CHECK(h32.masks.size() == 15);                  // C(6,2)
        CHECK(h32.hypergraph.hyperedges.size() == 15);  // 6! / (2!^3 3!)

        KneserInstance h33 = kneser(3, 3);
        CHECK(h33.masks.size() == 84);                   // C(9,3)
        CHECK(h33.hypergraph.hyperedges.size() == 280);  // 9! / (3!^3 3!)
    }

    SUBCASE("vertex 0 is the canonical least subset")
    {
        KneserInstance h = kneser(3, 2);
        CHECK(h.masks.front() == 0b11);
        CHECK(h.hypergraph.vertices.front() == "{1,2}");
        CHECK(std::is_sorted(h.masks.begin(), h.masks.end()));
        CHECK(h.vertex_of_mask(0b11) == 0);
        CHECK(h.vertex_of_mask(0b111) == -1);  // wrong cardinality
    }

    SUBCASE("every hyperedge partitions the ground set")
    {
        KneserInstance h = kneser(3, 2);
        for (const auto & e : h.hypergraph.hyperedges) {
            REQUIRE(e.size() == 3);
            std::uint64_t join = 0;
            for (int v : e) {
                CHECK((join & h.masks[v]) == 0);
                join |= h.masks[v];
            }
            CHECK(join == h.full_mask);
        }
        // and the edge list has no duplicates
        auto edges = h.hypergraph.hyperedges;
        std::sort(edges.begin(), edges.end());
        CHECK(std::adjacent_find(edges.begin(), edges.end()) == edges.end());
    }

    SUBCASE("parameter validation")
    {
        CHECK_THROWS_AS(kneser(2, 2), std::invalid_argument);
        CHECK_THROWS_AS(kneser(3, 0), std::invalid_argument);
        CHECK_THROWS_AS(kneser(3, 21), std::invalid_argument);   // ground set > 62
        CHECK_THROWS_AS(kneser(3, 5, 100), std::invalid_argument);  // guard
    }
}

TEST_CASE("hypergraph validation")
{
    Hypergraph h;
    h.vertices = {"u", "v"};
    h.hyperedges = {{0, 1}};
    h.uniformity = 2;
    CHECK_NOTHROW(require_valid(h));

    Hypergraph bad = h;
    bad.hyperedges.push_back({0, 2});
    CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

    bad = h;
    bad.hyperedges.push_back({0});
    CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

    bad = h;
    bad.hyperedges.push_back({});
    CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);
}

TEST_CASE("terms attached to a hypergraph")
{
    KneserInstance h = kneser(3, 2);

    SUBCASE("single ordering")
    {
        HypergraphTerms terms = hypergraph_terms(h.hypergraph, OrderingMode::Single);
        CHECK(terms.t.words.size() == 15);  // one word per hyperedge
        for (const auto & w : terms.t.words)
            CHECK(w.length() == 3);
        CHECK(terms.q.length() == 15);  // one letter per vertex
        CHECK(terms.q.letters.front() == "x1");
        CHECK(terms.q.letters.back() == "x15");
        CHECK(terms.t.content().size() == 15);
    }

    SUBCASE("all orderings")
    {
        HypergraphTerms terms = hypergraph_terms(h.hypergraph, OrderingMode::All);
        CHECK(terms.t.words.size() == 15 * 6);  // k! orderings per hyperedge
        // the single-ordering words are among them
        HypergraphTerms single = hypergraph_terms(h.hypergraph, OrderingMode::Single);
        for (const auto & w : single.t.words)
            CHECK(std::find(terms.t.words.begin(), terms.t.words.end(), w)
                != terms.t.words.end());
    }

    SUBCASE("non-uniform hypergraphs are rejected")
    {
        Hypergraph plain;
        plain.vertices = {"u", "v"};
        plain.hyperedges = {{0, 1}};
        CHECK_THROWS_AS(hypergraph_terms(plain, OrderingMode::Single), std::invalid_argument);
    }
}

TEST_CASE("homomorphism search")
{
    SUBCASE("identity case is found and verified")
    {
        KneserInstance h = kneser(3, 2);
        HomCertificate c = hom_search(h, h);
        REQUIRE(c.kind == HomCertificate::Kind::Found);
        CHECK(check_kneser_hom(h, h, c.map));
    }

    SUBCASE("m = 1 maps into every target")
    {
        KneserInstance src = kneser(3, 1);
        for (int n = 1; n <= 3; ++n) {
            HomCertificate c = hom_search(src, kneser(3, n));
            CHECK(c.kind == HomCertificate::Kind::Found);
        }
    }

    SUBCASE("exhaustion when no homomorphism exists")
    {
        HomCertificate c = hom_search(kneser(3, 2), kneser(3, 1));
        CHECK(c.kind == HomCertificate::Kind::Exhausted);

        c = hom_search(kneser(3, 2), kneser(3, 3));
        CHECK(c.kind == HomCertificate::Kind::Exhausted);

        c = hom_search(kneser(3, 3), kneser(3, 2));
        CHECK(c.kind == HomCertificate::Kind::Exhausted);
    }

    SUBCASE("verdicts agree with the divisibility oracle")
    {
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n) {
                HomCertificate c = hom_search(kneser(3, m), kneser(3, n));
                REQUIRE(c.kind != HomCertificate::Kind::Timeout);
                CHECK((c.kind == HomCertificate::Kind::Found) == hom_exists_oracle(m, n));
            }
    }

    SUBCASE("symmetry reduction does not change the verdict")
    {
        for (auto [m, n] : {std::pair{1, 2}, {2, 1}, {2, 2}, {2, 3}}) {
            HomCertificate with = hom_search(kneser(3, m), kneser(3, n), {}, true);
            HomCertificate without = hom_search(kneser(3, m), kneser(3, n), {}, false);
            CHECK(with.kind == without.kind);
            CHECK(with.symmetry_reduced);
            CHECK_FALSE(without.symmetry_reduced);
        }
    }

    SUBCASE("budgets produce honest timeouts")
    {
        SearchBudget tiny{.node_budget = 1};
        HomCertificate c = hom_search(kneser(3, 3), kneser(3, 3), tiny);
        CHECK(c.kind == HomCertificate::Kind::Timeout);
        CHECK(c.nodes <= 2);
    }

    SUBCASE("mismatched uniformity is rejected")
    {
        CHECK_THROWS_AS(hom_search(kneser(3, 1), kneser(4, 1)), std::invalid_argument);
    }
}

TEST_CASE("block homomorphisms")
{
    SUBCASE("exist exactly for divisible sizes and pass re-checking")
    {
        for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 4}}) {
            HomCertificate c = block_hom(3, m, n);
            REQUIRE(c.kind == HomCertificate::Kind::Found);
            CHECK(check_kneser_hom(kneser(3, m), kneser(3, n), c.map));
        }
        CHECK_THROWS_AS(block_hom(3, 2, 3), std::invalid_argument);
    }

    SUBCASE("the map sends the canonical subset to the canonical subset")
    {
        HomCertificate c = block_hom(3, 1, 2);
        CHECK(c.map[0] == 0);  // {1} -> {1,2}
    }
}

TEST_CASE("the hyperedge-level re-check rejects corrupted maps")
{
    KneserInstance src = kneser(3, 1), tgt = kneser(3, 2);
    HomCertificate good = block_hom(3, 1, 2);
    REQUIRE(check_kneser_hom(src, tgt, good.map));

    std::vector<int> bad = good.map;
    bad[1] = bad[0];  // two blocks collide
    CHECK_FALSE(check_kneser_hom(src, tgt, bad));

    bad = good.map;
    bad.pop_back();  // wrong arity
    CHECK_FALSE(check_kneser_hom(src, tgt, bad));

    bad = good.map;
    bad[0] = 999;  // out of range
    CHECK_FALSE(check_kneser_hom(src, tgt, bad));
}
