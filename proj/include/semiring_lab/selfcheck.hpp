#pragma once

// The end-to-end acceptance suite: thirteen numbered criteria covering every
// module, each returning an independent pass/fail verdict with a short
// explanation. Shared by the `acceptance` test binary and `semiring-lab
// report all`.

#include <semiring_lab/builtins.hpp>
#include <semiring_lab/experiments.hpp>
#include <semiring_lab/finite_semiring.hpp>
#include <semiring_lab/hypergraph.hpp>
#include <semiring_lab/naive_reference.hpp>
#include <semiring_lab/terms.hpp>
#include <semiring_lab/word_semiring.hpp>

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace semiring_lab::selfcheck {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::int64_t elapsed_ms = 0;
};

namespace detail {

    template <typename F>
    CriterionResult timed(int number, std::string name, F && body)
    {
        CriterionResult result;
        result.number = number;
        result.name = std::move(name);
        auto start = std::chrono::steady_clock::now();
        try {
            std::ostringstream detail;
            result.pass = body(detail);
            result.detail = detail.str();
        } catch (const std::exception & e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start).count();
        return result;
    }

} // namespace detail

inline CriterionResult criterion_axioms()
{
    return detail::timed(1, "axiom checks and mutation detection", [](std::ostringstream & out) {
        int verified = 0;
        bool ok = true;
        for (const auto & name : builtin_names()) {
            ok = ok && verify_ai_semiring(builtin(name)).ok();
            ++verified;
        }

        std::vector<FiniteSemiring> constructed;
        constructed.push_back(flat_word_semiring({.words = {linear_word(4)}}).algebra);
        constructed.push_back(flat_word_semiring(
            {.words = {linear_word(3)}, .commutative = true, .with_identity = true}).algebra);
        constructed.push_back(divisibility_semiring({.words = {linear_word(3)}}).algebra);
        constructed.push_back(divisibility_semiring(
            {.words = {power_word(3)}, .with_identity = true}).algebra);
        constructed.push_back(truncated_max_plus(4));
        constructed.push_back(s_infinity(builtin_S53()));
        for (const auto & s : constructed) {
            ok = ok && verify_ai_semiring(s).ok();
            ++verified;
        }

        FiniteSemiring base = builtin_S53();
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<int> table_pick(0, 1), cell_pick(0, 8), value_pick(0, 2);
        int detected = 0;
        for (int trial = 0; trial < 20; ++trial) {
            FiniteSemiring s = base;
            std::vector<int> & table = table_pick(rng) ? s.mul_table : s.add_table;
            int cell = cell_pick(rng);
            int value = value_pick(rng);
            while (value == table[cell])
                value = value_pick(rng);
            table[cell] = value;
            if (! verify_ai_semiring(s).ok())
                ++detected;
        }

        out << verified << " algebras verified, " << detected << "/20 seeded mutations detected";
        return ok && detected == 20;
    });
}

inline CriterionResult criterion_orders()
{
    return detail::timed(2, "natural orders of S_53 and B_2^1", [](std::ostringstream & out) {
        FiniteSemiring s53 = builtin_S53();
        NaturalOrder o53 = natural_order(s53);
        int z = s53.require_index("0"), a = s53.require_index("a"), one = s53.require_index("1");
        bool chain = o53.below(one, a) && o53.below(a, z) && o53.below(one, z)
            && ! o53.below(a, one) && ! o53.below(z, a) && ! o53.below(z, one)
            && o53.greatest && *o53.greatest == z;

        FiniteSemiring b21 = builtin_B21();
        NaturalOrder ob = natural_order(b21);
        auto idx = [&](const char * name) { return b21.require_index(name); };
        std::set<std::pair<int, int>> expected;
        for (int i = 0; i < b21.size(); ++i)
            expected.insert({i, i});
        expected.insert({idx("1"), idx("e11")});
        expected.insert({idx("1"), idx("e22")});
        for (const char * low : {"1", "e11", "e12", "e21", "e22"})
            expected.insert({idx(low), idx("0")});
        std::set<std::pair<int, int>> actual;
        for (int i = 0; i < b21.size(); ++i)
            for (int j = 0; j < b21.size(); ++j)
                if (ob.below(i, j))
                    actual.insert({i, j});
        bool hasse = actual == expected && ob.greatest && *ob.greatest == idx("0");

        out << "S_53 chain 1 < a < 0 " << (chain ? "confirmed" : "FAILED")
            << "; B_2^1 order " << (hasse ? "matches" : "DIFFERS");
        return chain && hasse;
    });
}

inline CriterionResult criterion_named_isomorphisms()
{
    return detail::timed(3, "named isomorphisms", [](std::ostringstream & out) {
        auto iso_ok = [](const FiniteSemiring & a, const FiniteSemiring & b) {
            IsoSearchResult r = find_isomorphism(a, b);
            return r.map.has_value() && is_isomorphism(a, b, *r.map);
        };

        WordSemiring mc1 = divisibility_semiring({.words = {}, .with_identity = true});
        bool ok = iso_ok(mc1.algebra, builtin_M2());

        WordSemiring mca = divisibility_semiring({.words = {power_word(1)}, .with_identity = true});
        ok = ok && iso_ok(mca.algebra, builtin_S53());

        int trunc_ok = 0;
        for (int k = 1; k <= 6; ++k) {
            WordSemiring ws = divisibility_semiring(
                {.words = {power_word(k - 1)}, .with_identity = true});
            if (iso_ok(ws.algebra, truncated_max_plus(k)))
                ++trunc_ok;
        }
        ok = ok && trunc_ok == 6;

        bool distinct = ! find_isomorphism(builtin_S7(), builtin_S53()).map.has_value();
        ok = ok && distinct;

        out << "M_c*(1) = M_2, M_c*(a) = S_53, " << trunc_ok
            << "/6 truncations matched, S_7 and S_53 " << (distinct ? "distinct" : "CONFLATED");
        return ok;
    });
}

inline CriterionResult criterion_reconstruction()
{
    return detail::timed(4, "reconstruction of S_c*(a_1...a_n) from S_53^n",
        [](std::ostringstream & out) {
            bool ok = true;
            for (int n = 1; n <= 4; ++n) {
                ReconstructionReport r = reconstruct_Sc_star(n);
                bool this_ok = r.ok && r.quotient_size == (1 << n) && r.isomorphism.has_value();
                ok = ok && this_ok;
                out << "n=" << n << (this_ok ? " ok" : " FAILED") << (n < 4 ? ", " : "");
            }
            return ok;
        });
}

inline CriterionResult criterion_separation_structure()
{
    return detail::timed(5, "structure of A_{3,2}", [](std::ostringstream & out) {
        SeparationInstance inst = build_A(3, 2);
        bool size_ok = inst.algebra.size() == 58;
        PowerStructureReport powers = verify_power_structure(inst);
        out << inst.algebra.size() << " elements, A^3 = {0, full} "
            << (powers.power_k_ok ? "ok" : "FAILED") << ", A^4 = {0} "
            << (powers.power_k1_ok ? "ok" : "FAILED") << ", nilpotency "
            << (powers.nilpotent_identity_holds() ? "holds structurally" : "FAILED");
        return size_ok && powers.power_k_ok && powers.power_k1_ok
            && powers.nilpotent_identity_holds();
    });
}

inline CriterionResult criterion_witness_failure()
{
    return detail::timed(6, "witness assignments falsifying sigma_{k,q} on A_{k,q}",
        [](std::ostringstream & out) {
            bool ok = true;
            for (int q : {2, 3}) {
                WitnessReport r = witness_failure(build_A(3, q), sigma(3, q));
                ok = ok && r.ok;
                out << "q=" << q << (r.ok ? " ok" : " FAILED: " + r.failure) << (q == 2 ? ", " : "");
            }
            return ok;
        });
}

inline CriterionResult criterion_sigma_satisfaction()
{
    return detail::timed(7, "sigma satisfaction via hom exhaustion", [](std::ostringstream & out) {
        SearchBudget budget{.node_budget = 1'000'000'000, .time_budget_ms = 600'000};

        ReductionReport required = reduction_satisfies(build_A(3, 3), sigma(3, 2), budget);
        bool required_ok = required.verdict == ReductionVerdict::Satisfied
            && required.hom.kind == HomCertificate::Kind::Exhausted;
        out << "sigma_{3,2} on A_{3,3}: "
            << (required_ok ? "satisfied, hom search exhausted" : "FAILED") << " ("
            << required.hom.nodes << " nodes)";

        SeparationInstance a32 = build_A(3, 2);
        SigmaIdentity sig33 = sigma(3, 3);
        ReductionReport stretch = reduction_satisfies(a32, sig33, budget);
        bool stretch_ok = false;
        if (stretch.verdict == ReductionVerdict::Satisfied
            && stretch.hom.kind == HomCertificate::Kind::Exhausted) {
            stretch_ok = true;
            out << "; sigma_{3,3} on A_{3,2}: satisfied, hom search exhausted ("
                << stretch.hom.nodes << " nodes)";
        } else if (stretch.verdict == ReductionVerdict::Inconclusive) {
            SampleResult sample = sample_satisfies(a32.algebra, sig33.identity, 100'000, 1);
            stretch_ok = ! sample.counterexample_found && ! hom_exists_oracle(3, 2);
            out << "; sigma_{3,3} on A_{3,2}: corroborated, not exhausted (10^5 trials, "
                << (sample.counterexample_found ? "counterexample found" : "no counterexample")
                << ")";
        } else {
            out << "; sigma_{3,3} on A_{3,2}: FAILED (counterexample)";
        }
        return required_ok && stretch_ok;
    });
}

inline CriterionResult criterion_hom_oracle()
{
    return detail::timed(8, "hom search against the divisibility oracle",
        [](std::ostringstream & out) {
            SearchBudget budget{.node_budget = 1'000'000'000, .time_budget_ms = 60'000};
            int agreed = 0, total = 0;
            for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 1}, {3, 1}, {2, 4}}) {
                HomCertificate c = hom_search(kneser(3, m), kneser(3, n), budget);
                ++total;
                if (c.kind != HomCertificate::Kind::Timeout
                    && (c.kind == HomCertificate::Kind::Found) == hom_exists_oracle(m, n))
                    ++agreed;
            }
            int blocks = 0;
            for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 4}, {2, 2}}) {
                HomCertificate c = block_hom(3, m, n);
                if (c.kind == HomCertificate::Kind::Found
                    && check_kneser_hom(kneser(3, m), kneser(3, n), c.map))
                    ++blocks;
            }
            out << agreed << "/" << total << " oracle agreements, " << blocks
                << "/4 block homomorphisms re-checked";
            return agreed == total && blocks == 4;
        });
}

inline CriterionResult criterion_embedding()
{
    return detail::timed(9, "block embedding of S_c*(a_1a_2a_3) into A_{3,2}",
        [](std::ostringstream & out) {
            EmbeddingReport r = embed_Sc_star_in_A(build_A(3, 2));
            out << (r.ok ? "injective homomorphism" : "FAILED: " + r.failure) << ", image size "
                << r.image_size;
            return r.ok && r.image_size == 8;
        });
}

inline CriterionResult criterion_regularization()
{
    return detail::timed(10, "regularization equivalence over a seeded corpus",
        [](std::ostringstream & out) {
            auto corpus = identity_corpus(200, 97, 3, 4, 4);
            bool ok = true;
            for (const char * name : {"S_53", "B_0", "S_7"}) {
                RegularizationReport r = regularization_check(builtin(name), corpus);
                ok = ok && r.ok() && r.checked == corpus.size();
                out << name << ": " << r.exceptions.size() << " exceptions"
                    << (std::string(name) == "S_7" ? "" : ", ");
            }
            return ok;
        });
}

inline CriterionResult criterion_b0_suite()
{
    return detail::timed(11, "B_0 corpus: occurrence implication, isoterms, ascending chain",
        [](std::ostringstream & out) {
            B0Report r = b0_checks();
            out << r.preceq_pairs << " comparable pairs, " << r.occurrence_violations.size()
                << " violations of the provable implication; " << r.unrestricted_exceptions.size()
                << " corpus pairs refute the unrestricted phrasing (e.g. x1 preceq x1*x2*x1,"
                   " where the flanks of the single occurrence share a variable); isoterm"
                   " verdicts and chain facts " << (r.ok() ? "ok" : "FAILED");
            return r.ok();
        });
}

inline CriterionResult criterion_subdirect()
{
    return detail::timed(12, "max-plus subdirect decomposition on a finite segment",
        [](std::ostringstream & out) {
            SubdirectReport r = subdirect_maxplus_check(5);
            out << "segment {0..5}: injective " << (r.injective ? "yes" : "NO")
                << ", operations preserved " << (r.operations_preserved ? "yes" : "NO")
                << ", all checked coordinates surjective " << (r.ok() ? "yes" : "NO");
            return r.ok();
        });
}

inline CriterionResult criterion_engine_oracle()
{
    return detail::timed(13, "satisfaction engine against the naive evaluator",
        [](std::ostringstream & out) {
            auto corpus = identity_corpus(500, 1234, 3, 4, 4);
            int checked = 0;
            bool ok = true;
            for (const char * name : {"S_53", "B_0"}) {
                FiniteSemiring s = builtin(name);
                for (const auto & id : corpus) {
                    SatResult r = satisfies(s, id);
                    if (r.outcome == Outcome::TooLarge) {
                        ok = false;
                        continue;
                    }
                    bool engine = r.outcome == Outcome::Holds;
                    if (engine != naive::holds(s, id))
                        ok = false;
                    if (r.outcome == Outcome::Counterexample
                        && naive::eval_term(s, id.lhs, r.counterexample)
                            == naive::eval_term(s, id.rhs, r.counterexample))
                        ok = false;
                    ++checked;
                }
            }
            out << checked << " identity/algebra pairs cross-checked, "
                << (ok ? "no disagreements" : "DISAGREEMENTS FOUND");
            return ok;
        });
}

inline std::vector<CriterionResult> run_all()
{
    return {
        criterion_axioms(),
        criterion_orders(),
        criterion_named_isomorphisms(),
        criterion_reconstruction(),
        criterion_separation_structure(),
        criterion_witness_failure(),
        criterion_sigma_satisfaction(),
        criterion_hom_oracle(),
        criterion_embedding(),
        criterion_regularization(),
        criterion_b0_suite(),
        criterion_subdirect(),
        criterion_engine_oracle(),
    };
}

} // namespace semiring_lab::selfcheck
