#pragma once

#include <semiring_lab/builtins.hpp>
#include <semiring_lab/finite_semiring.hpp>
#include <semiring_lab/hypergraph.hpp>
#include <semiring_lab/terms.hpp>
#include <semiring_lab/word_semiring.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiring_lab {

/// The subalgebra A_{k,p} of S_c*(a_1...a_{kp}) generated by the length-p
/// square-free products, together with the bookkeeping needed to move
/// between subsets of [kp] and element indices.
struct SeparationInstance {
    int k = 0;
    int p = 0;
    FiniteSemiring algebra;                    // A_{k,p}
    std::vector<std::uint64_t> element_masks;  // subset of [kp] per element; ~0 for the zero
    int zero = -1;
    int full = -1;                             // a_1...a_{kp}
    std::vector<int> generators;               // indices of the length-p elements

    int element_of_mask(std::uint64_t mask) const
    {
        for (int i = 0; i < algebra.size(); ++i)
            if (i != zero && element_masks[i] == mask)
                return i;
        return -1;
    }
};

inline SeparationInstance build_A(int k, int p, int ground_guard = 20)
{
    if (k < 3)
        throw std::invalid_argument("separation instances require k >= 3");
    if (p < 1)
        throw std::invalid_argument("generator length must be positive");
    int ground = k * p;
    if (ground > ground_guard || ground > 62)
        throw std::invalid_argument("separation instance exceeds the size guard");

    WordSemiringSpec spec;
    spec.words = {linear_word(ground)};
    spec.commutative = true;
    WordSemiring ambient = divisibility_semiring(spec);

    // letters are a1..a{kp}; the mask of a square-free word collects them
    auto mask_of_word = [&](const Word & w) {
        std::uint64_t mask = 0;
        for (const auto & l : w.letters) {
            int i = std::stoi(l.substr(1)) - 1;
            if (mask & (std::uint64_t{1} << i))
                throw std::logic_error("carrier word is not square-free");
            mask |= std::uint64_t{1} << i;
        }
        return mask;
    };

    std::vector<int> generator_ambient;
    for (int i = 0; i < ambient.algebra.size(); ++i)
        if (i != ambient.zero_index
            && static_cast<int>(ambient.carrier_words[i].length()) == p)
            generator_ambient.push_back(i);

    SubalgebraResult sub = generate_subalgebra(ambient.algebra, generator_ambient);

    SeparationInstance inst;
    inst.k = k;
    inst.p = p;
    inst.algebra = std::move(sub.algebra);
    inst.algebra.name = "A_{" + std::to_string(k) + "," + std::to_string(p) + "}";
    std::uint64_t full_mask = (std::uint64_t{1} << ground) - 1;
    for (std::size_t i = 0; i < sub.inclusion.images.size(); ++i) {
        int ambient_index = sub.inclusion.images[i];
        if (ambient_index == ambient.zero_index) {
            inst.element_masks.push_back(~std::uint64_t{0});
            inst.zero = static_cast<int>(i);
        } else {
            std::uint64_t mask = mask_of_word(ambient.carrier_words[ambient_index]);
            inst.element_masks.push_back(mask);
            if (mask == full_mask)
                inst.full = static_cast<int>(i);
            if (std::popcount(mask) == p)
                inst.generators.push_back(static_cast<int>(i));
        }
    }
    if (inst.zero < 0 || inst.full < 0)
        throw std::logic_error("A_{k,p} misses 0 or the full word");
    return inst;
}

/// Iterated set products A ⊇ A^2 ⊇ ...; the separation argument needs
/// A^k = {0, a_1...a_{kp}} and A^{k+1} = {0}, from which (with 0 greatest)
/// the (k+1)-nilpotent identity follows structurally, without brute force
/// over assignments.
struct PowerStructureReport {
    std::vector<std::vector<int>> powers;  // powers[j] = sorted carrier of A^{j+1}
    bool zero_is_greatest = false;
    bool power_k_ok = false;   // A^k = {0, full}
    bool power_k1_ok = false;  // A^{k+1} = {0}
    std::string failure;

    bool nilpotent_identity_holds() const
    {
        return zero_is_greatest && power_k1_ok;
    }
};

inline PowerStructureReport verify_power_structure(const SeparationInstance & inst)
{
    PowerStructureReport report;
    const FiniteSemiring & a = inst.algebra;

    NaturalOrder order = natural_order(a);
    report.zero_is_greatest = order.greatest && *order.greatest == inst.zero;

    std::vector<int> current(a.size());
    for (int i = 0; i < a.size(); ++i)
        current[i] = i;
    report.powers.push_back(current);
    for (int j = 2; j <= inst.k + 1; ++j) {
        std::set<int> next;
        for (int x : current)
            for (int y = 0; y < a.size(); ++y)
                next.insert(a.mul(x, y));
        current.assign(next.begin(), next.end());
        report.powers.push_back(current);
    }

    const std::vector<int> & pk = report.powers[inst.k - 1];
    std::vector<int> expected = {inst.zero, inst.full};
    std::sort(expected.begin(), expected.end());
    report.power_k_ok = pk == expected;
    const std::vector<int> & pk1 = report.powers[inst.k];
    report.power_k1_ok = pk1 == std::vector<int>{inst.zero};

    if (! report.zero_is_greatest)
        report.failure = "0 is not the greatest element";
    else if (! report.power_k_ok)
        report.failure = "A^k differs from {0, a_1...a_{kp}}";
    else if (! report.power_k1_ok)
        report.failure = "A^{k+1} differs from {0}";
    return report;
}

/// The identity t_H ~ t_H + q_H over the Kneser hypergraph H_{k,q}.
struct SigmaIdentity {
    int k = 0;
    int q = 0;
    KneserInstance instance;
    HypergraphTerms terms;
    Identity identity;
};

inline SigmaIdentity sigma(int k, int q, OrderingMode mode = OrderingMode::Single)
{
    SigmaIdentity out;
    out.k = k;
    out.q = q;
    out.instance = kneser(k, q);
    out.terms = hypergraph_terms(out.instance.hypergraph, mode);
    std::vector<Word> rhs_words = out.terms.t.words;
    rhs_words.push_back(out.terms.q);
    out.identity = Identity{out.terms.t, Term::of(std::move(rhs_words))};
    return out;
}

/// The canonical witness assignment x_v -> a_{i_1}...a_{i_q} for the q-subset
/// v; it sends t to the full word and t + q to 0, so sigma_{k,q} fails on
/// A_{k,q}. Both sides are re-evaluated through the term evaluator.
struct WitnessReport {
    Assignment phi;
    int lhs = -1;
    int rhs = -1;
    bool ok = false;
    std::string failure;
};

inline WitnessReport witness_failure(const SeparationInstance & inst, const SigmaIdentity & sig)
{
    if (sig.q != inst.p || sig.k != inst.k)
        throw std::invalid_argument("witness assignment needs p = q and matching k");

    WitnessReport report;
    for (std::size_t v = 0; v < sig.instance.masks.size(); ++v) {
        int element = inst.element_of_mask(sig.instance.masks[v]);
        if (element < 0) {
            report.failure = "vertex subset is not an element of A";
            return report;
        }
        report.phi[vertex_variable(static_cast<int>(v))] = element;
    }
    report.lhs = eval(inst.algebra, sig.identity.lhs, report.phi);
    report.rhs = eval(inst.algebra, sig.identity.rhs, report.phi);
    report.ok = report.lhs == inst.full && report.rhs == inst.zero;
    if (! report.ok)
        report.failure = "witness evaluation did not reproduce lhs = a_1...a_{kq}, rhs = 0";
    return report;
}

enum class ReductionVerdict { Satisfied, Counterexample, Inconclusive };

/// Establishes whether sigma_{k,q} holds on A_{k,p} via the structural
/// reduction to Kneser hom existence. The two bridging steps (nonzero k-fold
/// products force length-p factors; the induced vertex map preserves
/// hyperedges) are re-checked on the instance, so the verdict rests only on
/// checked facts plus the hom certificate.
struct ReductionReport {
    ReductionVerdict verdict = ReductionVerdict::Inconclusive;
    std::vector<std::string> checked_facts;
    std::string failure;
    HomCertificate hom;
    bool oracle_prediction_hom = false;  // hom_exists_oracle(q, p)
    Assignment counterexample;           // when verdict == Counterexample
};

inline ReductionReport reduction_satisfies(const SeparationInstance & inst, const SigmaIdentity & sig,
    const SearchBudget & budget = {}, bool symmetry = true)
{
    if (sig.k != inst.k)
        throw std::invalid_argument("mismatched uniformity k");

    ReductionReport report;
    report.oracle_prediction_hom = hom_exists_oracle(sig.q, inst.p);

    auto fact = [&](bool ok, const std::string & text) {
        if (ok)
            report.checked_facts.push_back(text);
        else if (report.failure.empty())
            report.failure = "structural fact failed: " + text;
        return ok;
    };

    NaturalOrder order = natural_order(inst.algebra);
    bool facts_ok = true;
    facts_ok &= fact(order.greatest && *order.greatest == inst.zero, "0 is the greatest element of A");

    bool lengths_ok = true;
    std::uint64_t length_p_count = 0;
    for (int i = 0; i < inst.algebra.size(); ++i) {
        if (i == inst.zero)
            continue;
        int len = std::popcount(inst.element_masks[i]);
        if (len < inst.p)
            lengths_ok = false;
        if (len == inst.p)
            ++length_p_count;
    }
    facts_ok &= fact(lengths_ok, "every nonzero element has length >= p");
    facts_ok &= fact(length_p_count == detail::binomial(inst.k * inst.p, inst.p),
        "the length-p elements are exactly the p-subset generators");

    PowerStructureReport powers = verify_power_structure(inst);
    facts_ok &= fact(powers.power_k_ok && powers.power_k1_ok,
        "A^k = {0, a_1...a_{kp}} and A^{k+1} = {0}");

    std::vector<bool> covered(sig.instance.masks.size(), false);
    for (const auto & e : sig.instance.hypergraph.hyperedges)
        for (int v : e)
            covered[v] = true;
    facts_ok &= fact(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }),
        "every vertex of H_{k,q} lies in a hyperedge");

    facts_ok &= fact(sig.instance.masks.size() > static_cast<std::size_t>(inst.k),
        "q_H is longer than k, so it evaluates to 0 under generator assignments");

    if (! facts_ok)
        return report;

    // With the facts above, an assignment keeping every edge product nonzero
    // assigns each variable a p-subset generator and induces a hypergraph
    // homomorphism H_{k,q} -> H_{k,p}; sigma holds iff no such hom exists.
    KneserInstance target = kneser(inst.k, inst.p);
    report.hom = hom_search(sig.instance, target, budget, symmetry);

    switch (report.hom.kind) {
    case HomCertificate::Kind::Exhausted:
        report.verdict = ReductionVerdict::Satisfied;
        break;
    case HomCertificate::Kind::Timeout:
        report.verdict = ReductionVerdict::Inconclusive;
        report.failure = "hom search exceeded its budget";
        break;
    case HomCertificate::Kind::Found: {
        // convert the hom back into an explicit counterexample assignment
        for (std::size_t v = 0; v < sig.instance.masks.size(); ++v) {
            int element = inst.element_of_mask(target.masks[report.hom.map[v]]);
            if (element < 0)
                throw std::logic_error("hom image is not an element of A");
            report.counterexample[vertex_variable(static_cast<int>(v))] = element;
        }
        int lhs = eval(inst.algebra, sig.identity.lhs, report.counterexample);
        int rhs = eval(inst.algebra, sig.identity.rhs, report.counterexample);
        if (lhs == rhs)
            throw std::logic_error("recovered assignment is not a counterexample");
        report.verdict = ReductionVerdict::Counterexample;
        break;
    }
    }
    return report;
}

/// Replays the reconstruction of S_c*(a_1...a_n) from S_53: the subalgebra
/// A_n of S_53^n generated by the alpha_i, quotiented by the elements with a
/// zero coordinate, is isomorphic to the independently built S_c*(a_1...a_n).
struct ReconstructionReport {
    int n = 0;
    int subalgebra_size = 0;
    int quotient_size = 0;
    bool ideal_valid = false;
    bool quotient_is_ai = false;
    bool projection_is_hom = false;
    std::optional<ElementMap> isomorphism;  // quotient -> S_c*(a_1...a_n)
    bool ok = false;
    std::string failure;
};

inline ReconstructionReport reconstruct_Sc_star(int n, int guard = 6)
{
    if (n < 1 || n > guard)
        throw std::invalid_argument("n out of range for reconstruction");

    ReconstructionReport report;
    report.n = n;

    FiniteSemiring s53 = builtin_S53();
    FiniteSemiring product = direct_product(std::vector<FiniteSemiring>(n, s53));

    // alpha_i = (1,...,1,a,1,...,1); element indices in S_53 are 0,a,1 = 0,1,2
    auto tuple_index = [&](const std::vector<int> & digits) {
        std::size_t idx = 0;
        for (int d : digits)
            idx = idx * 3 + static_cast<std::size_t>(d);
        return static_cast<int>(idx);
    };
    std::vector<int> generators;
    for (int i = 0; i < n; ++i) {
        std::vector<int> digits(n, 2);
        digits[i] = 1;
        generators.push_back(tuple_index(digits));
    }

    SubalgebraResult sub = generate_subalgebra(product, generators);
    report.subalgebra_size = sub.algebra.size();

    // J_n: elements with a coordinate equal to 0
    auto has_zero_coordinate = [&](int sub_index) {
        int ambient = sub.inclusion(sub_index);
        for (int i = 0; i < n; ++i) {
            int radix = 1;
            for (int j = i + 1; j < n; ++j)
                radix *= 3;
            if (ambient / radix % 3 == 0)
                return true;
        }
        return false;
    };
    IdealFilter ideal;
    for (int i = 0; i < sub.algebra.size(); ++i)
        if (has_zero_coordinate(i))
            ideal.members.push_back(i);

    if (auto err = ideal_filter_violation(sub.algebra, ideal)) {
        report.failure = "J_n is not a valid ideal filter: " + *err;
        return report;
    }
    report.ideal_valid = true;

    QuotientResult quotient = ideal_quotient(sub.algebra, ideal);
    report.quotient_size = quotient.algebra.size();
    report.quotient_is_ai = verify_ai_semiring(quotient.algebra).ok();
    report.projection_is_hom = is_homomorphism(sub.algebra, quotient.algebra, quotient.projection)
        && is_surjective(quotient.projection, quotient.algebra);
    if (! report.quotient_is_ai || ! report.projection_is_hom) {
        report.failure = "quotient failed re-validation";
        return report;
    }

    WordSemiringSpec spec;
    spec.words = {linear_word(n)};
    spec.commutative = true;
    WordSemiring reference = divisibility_semiring(spec);

    IsoSearchResult iso = find_isomorphism(quotient.algebra, reference.algebra);
    if (! iso.map) {
        report.failure = "no isomorphism between the quotient and S_c*(a_1...a_n)";
        return report;
    }
    report.isomorphism = iso.map;
    report.ok = true;
    return report;
}

/// The explicit embedding of S_c*(a_1...a_k) into A_{k,p}: a_i maps to the
/// i-th consecutive block a_{(i-1)p+1}...a_{ip}, extended to all divisors.
struct EmbeddingReport {
    ElementMap map;  // S_c*(a_1...a_k) -> A_{k,p}
    int image_size = 0;
    bool ok = false;
    std::string failure;
};

inline EmbeddingReport embed_Sc_star_in_A(const SeparationInstance & inst)
{
    EmbeddingReport report;
    int k = inst.k, p = inst.p;

    WordSemiringSpec spec;
    spec.words = {linear_word(k)};
    spec.commutative = true;
    WordSemiring small = divisibility_semiring(spec);

    report.map.images.assign(small.algebra.size(), -1);
    for (int i = 0; i < small.algebra.size(); ++i) {
        if (i == small.zero_index) {
            report.map.images[i] = inst.zero;
            continue;
        }
        std::uint64_t block_mask = 0;
        for (const auto & letter : small.carrier_words[i].letters) {
            int idx = std::stoi(letter.substr(1)) - 1;  // a_{idx+1}
            for (int j = 0; j < p; ++j)
                block_mask |= std::uint64_t{1} << (idx * p + j);
        }
        int element = inst.element_of_mask(block_mask);
        if (element < 0) {
            report.failure = "block image is not an element of A_{k,p}";
            return report;
        }
        report.map.images[i] = element;
    }

    if (! is_homomorphism(small.algebra, inst.algebra, report.map)) {
        report.failure = "block map is not a homomorphism";
        return report;
    }
    if (! is_injective(report.map)) {
        report.failure = "block map is not injective";
        return report;
    }
    std::set<int> image(report.map.images.begin(), report.map.images.end());
    report.image_size = static_cast<int>(image.size());
    report.ok = true;
    return report;
}

/// The B_0 corpus checks: the occurrence implication for preceq, bounded
/// isoterm status of linear words, and the strictly ascending chain of flat
/// semirings S(a_1...a_n).
///
/// The occurrence implication "p preceq q and occ(x, q) = 1 imply
/// occ(x, p) = 1" is provable only when the flanks of the unique occurrence
/// have disjoint content (q = q_1 x q_2 with c(q_1) and c(q_2) disjoint):
/// that is what makes the separating assignment well defined, and it covers
/// every use against linear words. Without the disjointness the implication
/// is simply false -- x1 preceq x1*x2*x1 holds in B_0 with occ(x2) = 1 on
/// the right only. Violations of the provable form go into
/// occurrence_violations (expected empty); witnesses against the
/// unrestricted form are reported separately for transparency.
struct B0Report {
    int pairs_checked = 0;
    int preceq_pairs = 0;
    std::vector<std::string> occurrence_violations;
    std::vector<std::string> unrestricted_exceptions;
    std::vector<IsotermResult> isoterm_results;  // linear words of length 1..max_linear
    bool chain_ok = false;
    std::string failure;

    bool ok() const
    {
        if (! occurrence_violations.empty() || ! chain_ok)
            return false;
        for (const auto & r : isoterm_results)
            if (r.verdict != IsotermVerdict::MinimalUpToBound)
                return false;
        return true;
    }
};

inline B0Report b0_checks(int corpus_vars = 3, int corpus_len = 4, int max_linear = 3,
    std::size_t isoterm_bound = 6, int chain_max = 4)
{
    B0Report report;
    FiniteSemiring b0 = builtin_B0();

    // (a) whenever p preceq_{B_0} q, occ(x, q) = 1 implies occ(x, p) = 1
    std::vector<std::string> vars;
    for (int i = 1; i <= corpus_vars; ++i)
        vars.push_back("x" + std::to_string(i));
    std::vector<Word> corpus;
    std::vector<int> digits;
    for (int len = 1; len <= corpus_len; ++len) {
        digits.assign(len, 0);
        for (;;) {
            Word w;
            for (int d : digits)
                w.letters.push_back(vars[d]);
            corpus.push_back(std::move(w));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == corpus_vars)
                digits[i++] = 0;
            if (i == digits.size())
                break;
        }
    }
    for (const auto & p : corpus)
        for (const auto & q : corpus) {
            ++report.pairs_checked;
            SatResult r = preceq(b0, Term::of({p}), Term::of({q}));
            if (r.outcome != Outcome::Holds)
                continue;
            ++report.preceq_pairs;
            for (const auto & x : q.content()) {
                if (q.occurrences(x) != 1 || p.occurrences(x) == 1)
                    continue;
                auto split = std::find(q.letters.begin(), q.letters.end(), x);
                std::set<std::string> left(q.letters.begin(), split);
                std::set<std::string> right(split + 1, q.letters.end());
                bool disjoint_flanks = std::none_of(left.begin(), left.end(),
                    [&](const std::string & y) { return right.count(y) > 0; });
                auto & bucket = disjoint_flanks ? report.occurrence_violations
                                                : report.unrestricted_exceptions;
                bucket.push_back(format_word(p) + " preceq " + format_word(q)
                    + " violates occ(" + x + ")");
            }
        }

    // (b) linear words are minimal up to the bound
    for (int n = 1; n <= max_linear; ++n) {
        Word w = linear_word(n, "x");
        report.isoterm_results.push_back(is_isoterm_bounded(b0, w, isoterm_bound));
    }

    // (c) the chain S(a_1) < S(a_1a_2) < ... : embeddings plus separation by
    // the nilpotent identities
    report.chain_ok = true;
    for (int n = 1; n <= chain_max; ++n) {
        WordSemiringSpec small_spec, big_spec;
        small_spec.words = {linear_word(n)};
        big_spec.words = {linear_word(n + 1)};
        WordSemiring small = flat_word_semiring(small_spec);
        WordSemiring big = flat_word_semiring(big_spec);

        ElementMap inclusion;
        inclusion.images.assign(small.algebra.size(), -1);
        bool embeds = true;
        for (int i = 0; i < small.algebra.size(); ++i) {
            if (i == small.zero_index) {
                inclusion.images[i] = big.zero_index;
                continue;
            }
            int j = big.index_of_word(small.carrier_words[i]);
            if (j < 0)
                embeds = false;
            else
                inclusion.images[i] = j;
        }
        embeds = embeds && is_homomorphism(small.algebra, big.algebra, inclusion)
            && is_injective(inclusion);

        Identity nilpotent = nilpotent_identity(n);
        bool small_satisfies = satisfies(small.algebra, nilpotent, 2'000'000'000).outcome == Outcome::Holds;
        bool big_violates
            = satisfies(big.algebra, nilpotent, 2'000'000'000).outcome == Outcome::Counterexample;
        if (! embeds || ! small_satisfies || ! big_violates) {
            report.chain_ok = false;
            report.failure = "chain step n = " + std::to_string(n) + " failed ("
                + (embeds ? "" : "embedding ") + (small_satisfies ? "" : "satisfaction ")
                + (big_violates ? "" : "separation") + ")";
        }
    }
    return report;
}

/// Per-identity regularization equivalence: S^inf satisfies phi exactly when
/// S satisfies phi and phi is regular. Checked over a seeded corpus.
struct RegularizationReport {
    std::size_t checked = 0;
    std::vector<std::string> exceptions;

    bool ok() const { return exceptions.empty(); }
};

inline RegularizationReport regularization_check(const FiniteSemiring & s,
    const std::vector<Identity> & corpus, std::uint64_t budget = default_op_budget)
{
    FiniteSemiring extended = s_infinity(s);
    RegularizationReport report;
    for (const auto & id : corpus) {
        SatResult base = satisfies(s, id, budget);
        SatResult ext = satisfies(extended, id, budget);
        if (base.outcome == Outcome::TooLarge || ext.outcome == Outcome::TooLarge)
            throw std::invalid_argument("regularization corpus identity exceeds the budget");
        bool lhs = ext.outcome == Outcome::Holds;
        bool rhs = base.outcome == Outcome::Holds && is_regular(id);
        ++report.checked;
        if (lhs != rhs)
            report.exceptions.push_back(format_identity(id));
    }
    return report;
}

} // namespace semiring_lab
