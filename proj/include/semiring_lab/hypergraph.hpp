#pragma once

#include <semiring_lab/terms.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiring_lab {

struct Hypergraph {
    std::vector<std::string> vertices;
    std::vector<std::vector<int>> hyperedges;  // sorted vertex index sets
    std::optional<int> uniformity;
};

inline void require_valid(const Hypergraph & h)
{
    for (const auto & e : h.hyperedges) {
        if (e.empty())
            throw std::invalid_argument("empty hyperedge");
        for (int v : e)
            if (v < 0 || v >= static_cast<int>(h.vertices.size()))
                throw std::invalid_argument("hyperedge vertex out of range");
        if (h.uniformity && static_cast<int>(e.size()) != *h.uniformity)
            throw std::invalid_argument("hyperedge violates uniformity");
    }
}

/// The k-uniform Kneser hypergraph: vertices are the m-subsets of [km]
/// (encoded as bit masks), hyperedges the partitions of [km] into k such
/// subsets. The graph view has the same vertices with disjointness as
/// adjacency.
struct KneserInstance {
    int k = 0;
    int m = 0;
    std::vector<std::uint64_t> masks;  // aligned with hypergraph.vertices
    std::uint64_t full_mask = 0;
    Hypergraph hypergraph;

    int vertex_of_mask(std::uint64_t mask) const
    {
        auto it = std::lower_bound(masks.begin(), masks.end(), mask);
        if (it == masks.end() || *it != mask)
            return -1;
        return static_cast<int>(it - masks.begin());
    }
};

namespace detail {

    inline std::string mask_label(std::uint64_t mask)
    {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < 64; ++i)
            if (mask & (std::uint64_t{1} << i)) {
                if (! first)
                    out += ",";
                out += std::to_string(i + 1);
                first = false;
            }
        return out + "}";
    }

    inline std::uint64_t binomial(int n, int k)
    {
        if (k < 0 || k > n)
            return 0;
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i)
            r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return r;
    }

} // namespace detail

inline KneserInstance kneser(int k, int m, std::uint64_t vertex_guard = 10000)
{
    if (k < 3)
        throw std::invalid_argument("Kneser hypergraphs require k >= 3");
    if (m < 1)
        throw std::invalid_argument("Kneser hypergraphs require m >= 1");
    int ground = k * m;
    if (ground > 62)
        throw std::invalid_argument("ground set too large for mask encoding");
    if (detail::binomial(ground, m) > vertex_guard)
        throw std::invalid_argument("Kneser instance exceeds the size guard");

    KneserInstance inst;
    inst.k = k;
    inst.m = m;
    inst.full_mask = (std::uint64_t{1} << ground) - 1;

    // all m-subsets in increasing mask order
    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i)
        pick[i] = i;
    for (;;) {
        std::uint64_t mask = 0;
        for (int i : pick)
            mask |= std::uint64_t{1} << i;
        inst.masks.push_back(mask);
        int i = m - 1;
        while (i >= 0 && pick[i] == ground - m + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    std::sort(inst.masks.begin(), inst.masks.end());
    for (auto mask : inst.masks)
        inst.hypergraph.vertices.push_back(detail::mask_label(mask));
    inst.hypergraph.uniformity = k;

    // partitions of [km] into k blocks, fixing the block of the least unused
    // element at each step
    std::vector<int> edge;
    auto recurse = [&](auto && self, std::uint64_t used) -> void {
        if (used == inst.full_mask) {
            std::vector<int> sorted = edge;
            std::sort(sorted.begin(), sorted.end());
            inst.hypergraph.hyperedges.push_back(std::move(sorted));
            return;
        }
        int least = std::countr_one(used);  // least unused element (0-based)
        std::uint64_t free = inst.full_mask & ~used;
        // choose the m-1 companions of `least` among the remaining elements
        std::vector<int> avail;
        for (int i = least + 1; i < ground; ++i)
            if (free & (std::uint64_t{1} << i))
                avail.push_back(i);
        std::vector<int> choose(m - 1);
        for (int i = 0; i < m - 1; ++i)
            choose[i] = i;
        bool more = true;
        while (more) {
            std::uint64_t block = std::uint64_t{1} << least;
            for (int i : choose)
                block |= std::uint64_t{1} << avail[i];
            edge.push_back(inst.vertex_of_mask(block));
            self(self, used | block);
            edge.pop_back();

            int i = m - 2;
            while (i >= 0 && choose[i] == static_cast<int>(avail.size()) - (m - 1) + i)
                --i;
            if (i < 0) {
                more = false;
            } else {
                ++choose[i];
                for (int j = i + 1; j < m - 1; ++j)
                    choose[j] = choose[j - 1] + 1;
            }
            if (m == 1)
                more = false;  // the single choice was the empty companion set
        }
    };
    recurse(recurse, 0);

    // construction-time invariants: counts match the closed forms, each edge
    // partitions the ground set
    std::uint64_t expected_vertices = detail::binomial(ground, m);
    if (inst.masks.size() != expected_vertices)
        throw std::logic_error("vertex count mismatch");
    for (const auto & e : inst.hypergraph.hyperedges) {
        std::uint64_t join = 0;
        for (int v : e) {
            if (join & inst.masks[v])
                throw std::logic_error("hyperedge blocks are not disjoint");
            join |= inst.masks[v];
        }
        if (join != inst.full_mask)
            throw std::logic_error("hyperedge does not cover the ground set");
    }
    return inst;
}

enum class OrderingMode { Single, All };

struct HypergraphTerms {
    Term t;  // one word per hyperedge (k! per hyperedge in All mode)
    Word q;  // product of all vertex variables
};

inline std::string vertex_variable(int v)
{
    return "x" + std::to_string(v + 1);
}

inline HypergraphTerms hypergraph_terms(const Hypergraph & h, OrderingMode mode)
{
    require_valid(h);
    if (! h.uniformity)
        throw std::invalid_argument("hypergraph terms need a uniform hypergraph");

    std::vector<Word> words;
    for (const auto & e : h.hyperedges) {
        if (mode == OrderingMode::Single) {
            Word w;
            for (int v : e)
                w.letters.push_back(vertex_variable(v));
            words.push_back(std::move(w));
        } else {
            std::vector<int> perm = e;
            std::sort(perm.begin(), perm.end());
            do {
                Word w;
                for (int v : perm)
                    w.letters.push_back(vertex_variable(v));
                words.push_back(std::move(w));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    HypergraphTerms out;
    out.t = Term::of(std::move(words));
    for (int v = 0; v < static_cast<int>(h.vertices.size()); ++v)
        out.q.letters.push_back(vertex_variable(v));
    return out;
}

struct SearchBudget {
    std::uint64_t node_budget = 1'000'000'000;
    std::int64_t time_budget_ms = 600'000;
};

struct HomCertificate {
    enum class Kind { Found, Exhausted, Timeout } kind = Kind::Timeout;
    std::vector<int> map;  // source vertex -> target vertex, when Found
    std::uint64_t nodes = 0;
    std::int64_t elapsed_ms = 0;
    bool symmetry_reduced = false;
};

/// Independent re-check: every source hyperedge must land on pairwise
/// disjoint target vertices covering the target ground set.
inline bool check_kneser_hom(const KneserInstance & source, const KneserInstance & target,
    const std::vector<int> & map)
{
    if (map.size() != source.masks.size())
        return false;
    for (int v : map)
        if (v < 0 || v >= static_cast<int>(target.masks.size()))
            return false;
    for (const auto & e : source.hypergraph.hyperedges) {
        std::uint64_t join = 0;
        for (int v : e) {
            std::uint64_t mask = target.masks[map[v]];
            if (join & mask)
                return false;
            join |= mask;
        }
        if (join != target.full_mask)
            return false;
    }
    return true;
}

namespace detail {

    // fixed-capacity dynamic bitset for search domains
    struct DomainBits {
        std::vector<std::uint64_t> w;

        static DomainBits all(int n)
        {
            DomainBits b;
            b.w.assign((n + 63) / 64, 0);
            for (int i = 0; i < n; ++i)
                b.w[i / 64] |= std::uint64_t{1} << (i % 64);
            return b;
        }

        static DomainBits none(std::size_t words)
        {
            DomainBits b;
            b.w.assign(words, 0);
            return b;
        }

        void set(int i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
        bool test(int i) const { return w[i / 64] >> (i % 64) & 1; }

        int count() const
        {
            int c = 0;
            for (auto x : w)
                c += std::popcount(x);
            return c;
        }

        bool intersect(const DomainBits & other)  // returns false if now empty
        {
            std::uint64_t any = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] &= other.w[i];
                any |= w[i];
            }
            return any != 0;
        }

        template <typename F>
        void for_each(F && f) const
        {
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::uint64_t x = w[i];
                while (x) {
                    int bit = std::countr_zero(x);
                    f(static_cast<int>(i * 64) + bit);
                    x &= x - 1;
                }
            }
        }
    };

} // namespace detail

/// Backtracking search for a homomorphism on the graph view (disjointness
/// preservation), with forward checking and most-constrained-variable
/// ordering. With symmetry on, the first source vertex's image is pinned to
/// the canonical m-subset of the target; this is sound because the symmetric
/// group of the target ground set acts transitively on its vertices and
/// permutes homomorphisms. Found maps are re-checked on every hyperedge.
inline HomCertificate hom_search(const KneserInstance & source, const KneserInstance & target,
    const SearchBudget & budget = {}, bool symmetry = true)
{
    if (source.k != target.k)
        throw std::invalid_argument("hom search requires matching uniformity k");

    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
    };

    int ns = static_cast<int>(source.masks.size());
    int nt = static_cast<int>(target.masks.size());

    // adjacency = disjointness
    std::vector<std::vector<int>> src_adj(ns);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b)
            if (a != b && ! (source.masks[a] & source.masks[b]))
                src_adj[a].push_back(b);
    std::vector<detail::DomainBits> tgt_adj(nt, detail::DomainBits::none((nt + 63) / 64));
    for (int a = 0; a < nt; ++a)
        for (int b = 0; b < nt; ++b)
            if (a != b && ! (target.masks[a] & target.masks[b]))
                tgt_adj[a].set(b);

    std::vector<detail::DomainBits> domain(ns, detail::DomainBits::all(nt));
    std::vector<int> assignment(ns, -1);

    if (symmetry) {
        // vertex 0 is the lexicographically least subset on both sides
        auto pinned = detail::DomainBits::none(domain[0].w.size());
        pinned.set(0);
        domain[0] = pinned;
    }

    HomCertificate cert;
    cert.symmetry_reduced = symmetry;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    auto assign_and_propagate = [&](int v, int value, std::vector<detail::DomainBits> & dom) {
        auto only = detail::DomainBits::none(dom[v].w.size());
        only.set(value);
        dom[v] = only;
        assignment[v] = value;
        for (int u : src_adj[v])
            if (assignment[u] < 0 && ! dom[u].intersect(tgt_adj[value]))
                return false;
        return true;
    };

    auto search = [&](auto && self, const std::vector<detail::DomainBits> & dom_in, int depth) -> bool {
        if (depth == ns)
            return true;
        if (nodes >= budget.node_budget || elapsed_ms() >= budget.time_budget_ms) {
            out_of_budget = true;
            return false;
        }

        // most constrained unassigned vertex
        int best = -1, best_count = nt + 1;
        for (int v = 0; v < ns; ++v) {
            if (assignment[v] >= 0)
                continue;
            int c = dom_in[v].count();
            if (c < best_count) {
                best = v;
                best_count = c;
            }
        }
        if (best_count == 0)
            return false;

        std::vector<int> values;
        dom_in[best].for_each([&](int t) { values.push_back(t); });
        for (int value : values) {
            ++nodes;
            std::vector<detail::DomainBits> dom = dom_in;
            if (assign_and_propagate(best, value, dom)) {
                if (self(self, dom, depth + 1))
                    return true;
                if (out_of_budget)
                    return false;
            }
            assignment[best] = -1;
        }
        return false;
    };

    bool found = search(search, domain, 0);
    cert.nodes = nodes;
    cert.elapsed_ms = elapsed_ms();
    if (found) {
        cert.kind = HomCertificate::Kind::Found;
        cert.map = assignment;
        if (! check_kneser_hom(source, target, cert.map))
            throw std::logic_error("hom search returned a map that fails re-checking");
    } else if (out_of_budget) {
        cert.kind = HomCertificate::Kind::Timeout;
    } else {
        cert.kind = HomCertificate::Kind::Exhausted;
    }
    return cert;
}

/// Closed-form oracle for Kneser hom existence: Hom(H_{k,m}, H_{k,n}) is
/// nonempty exactly when m divides n.
inline bool hom_exists_oracle(int m, int n)
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("subset sizes must be positive");
    return n % m == 0;
}

/// The explicit block homomorphism for m | n: the m-subset S maps to the
/// union of the consecutive blocks B_i (of size n/m) indexed by S.
inline HomCertificate block_hom(int k, int m, int n)
{
    if (n % m != 0)
        throw std::invalid_argument("block homomorphism requires m to divide n");
    KneserInstance source = kneser(k, m);
    KneserInstance target = kneser(k, n);
    int ratio = n / m;

    HomCertificate cert;
    cert.kind = HomCertificate::Kind::Found;
    for (std::uint64_t mask : source.masks) {
        std::uint64_t image = 0;
        for (int i = 0; i < k * m; ++i)
            if (mask & (std::uint64_t{1} << i))
                for (int j = 0; j < ratio; ++j)
                    image |= std::uint64_t{1} << (i * ratio + j);
        int v = target.vertex_of_mask(image);
        if (v < 0)
            throw std::logic_error("block image is not a target vertex");
        cert.map.push_back(v);
    }
    if (! check_kneser_hom(source, target, cert.map))
        throw std::logic_error("block homomorphism failed re-checking");
    return cert;
}

} // namespace semiring_lab
