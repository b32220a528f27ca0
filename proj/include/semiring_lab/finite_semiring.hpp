#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semiring_lab {

/// A finite algebra (S, +, *) given by operation tables over dense element
/// indices. Element i is named elements[i]; tables are row-major n*n.
struct FiniteSemiring {
    std::vector<std::string> elements;
    std::vector<int> add_table;
    std::vector<int> mul_table;
    std::string name;

    int size() const { return static_cast<int>(elements.size()); }

    int add(int a, int b) const { return add_table[a * size() + b]; }
    int mul(int a, int b) const { return mul_table[a * size() + b]; }

    int index_of(std::string_view elem) const
    {
        for (int i = 0; i < size(); ++i)
            if (elements[i] == elem)
                return i;
        return -1;
    }

    int require_index(std::string_view elem) const
    {
        int i = index_of(elem);
        if (i < 0)
            throw std::invalid_argument("no such element: " + std::string(elem));
        return i;
    }
};

/// Checks that both tables are square, total and in-range. Throws on malformed
/// input; every other entry point assumes this has been called.
inline void require_well_formed(const FiniteSemiring & s)
{
    std::size_t n = s.elements.size();
    if (n == 0)
        throw std::invalid_argument("empty carrier");
    if (s.add_table.size() != n * n || s.mul_table.size() != n * n)
        throw std::invalid_argument("operation table is not n x n");
    for (int v : s.add_table)
        if (v < 0 || v >= static_cast<int>(n))
            throw std::invalid_argument("add table entry out of range");
    for (int v : s.mul_table)
        if (v < 0 || v >= static_cast<int>(n))
            throw std::invalid_argument("mul table entry out of range");
}

struct LawFailure {
    std::string law;
    std::array<int, 3> witness;  // element indices; unused slots are -1
};

struct AxiomReport {
    std::vector<std::string> passed;
    std::vector<LawFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Exhaustive check of the ai-semiring laws: +-commutativity, +-associativity,
/// +-idempotency, *-associativity and both distributive laws.
inline AxiomReport verify_ai_semiring(const FiniteSemiring & s)
{
    require_well_formed(s);
    AxiomReport report;
    int n = s.size();

    auto law = [&](const std::string & name, auto && check) {
        std::optional<LawFailure> fail = check();
        if (fail)
            report.failures.push_back(*fail);
        else
            report.passed.push_back(name);
    };

    law("add-commutative", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (s.add(a, b) != s.add(b, a))
                    return LawFailure{"add-commutative", {a, b, -1}};
        return std::nullopt;
    });
    law("add-idempotent", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            if (s.add(a, a) != a)
                return LawFailure{"add-idempotent", {a, -1, -1}};
        return std::nullopt;
    });
    law("add-associative", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c)))
                        return LawFailure{"add-associative", {a, b, c}};
        return std::nullopt;
    });
    law("mul-associative", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)))
                        return LawFailure{"mul-associative", {a, b, c}};
        return std::nullopt;
    });
    law("left-distributive", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)))
                        return LawFailure{"left-distributive", {a, b, c}};
        return std::nullopt;
    });
    law("right-distributive", [&]() -> std::optional<LawFailure> {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c)))
                        return LawFailure{"right-distributive", {a, b, c}};
        return std::nullopt;
    });

    return report;
}

/// The relation a <= b iff a + b = b, plus the greatest element when one
/// exists. Only meaningful on a validated ai-semiring.
struct NaturalOrder {
    int n = 0;
    std::vector<bool> leq;  // row-major n*n
    std::optional<int> greatest;

    bool below(int a, int b) const { return leq[a * n + b]; }
};

inline NaturalOrder natural_order(const FiniteSemiring & s)
{
    AxiomReport report = verify_ai_semiring(s);
    if (! report.ok())
        throw std::invalid_argument("not an ai-semiring: fails " + report.failures.front().law);

    NaturalOrder order;
    order.n = s.size();
    order.leq.assign(order.n * order.n, false);
    for (int a = 0; a < order.n; ++a)
        for (int b = 0; b < order.n; ++b)
            if (s.add(a, b) == b)
                order.leq[a * order.n + b] = true;
    for (int g = 0; g < order.n; ++g) {
        bool top = true;
        for (int a = 0; a < order.n; ++a)
            if (! order.below(a, g))
                top = false;
        if (top) {
            order.greatest = g;
            break;
        }
    }
    return order;
}

/// A total map between element indices of two algebras. Whether it is a
/// homomorphism / embedding is re-checked by the predicates below, never
/// trusted from the producer.
struct ElementMap {
    std::vector<int> images;

    int operator()(int i) const { return images[i]; }
};

inline bool is_homomorphism(const FiniteSemiring & source, const FiniteSemiring & target,
    const ElementMap & map)
{
    if (map.images.size() != source.elements.size())
        return false;
    for (int v : map.images)
        if (v < 0 || v >= target.size())
            return false;
    for (int a = 0; a < source.size(); ++a)
        for (int b = 0; b < source.size(); ++b) {
            if (map(source.add(a, b)) != target.add(map(a), map(b)))
                return false;
            if (map(source.mul(a, b)) != target.mul(map(a), map(b)))
                return false;
        }
    return true;
}

inline bool is_injective(const ElementMap & map)
{
    std::set<int> seen(map.images.begin(), map.images.end());
    return seen.size() == map.images.size();
}

inline bool is_surjective(const ElementMap & map, const FiniteSemiring & target)
{
    std::set<int> seen(map.images.begin(), map.images.end());
    return static_cast<int>(seen.size()) == target.size();
}

inline bool is_isomorphism(const FiniteSemiring & source, const FiniteSemiring & target,
    const ElementMap & map)
{
    return source.size() == target.size() && is_homomorphism(source, target, map)
        && is_injective(map);
}

inline FiniteSemiring direct_product(const std::vector<FiniteSemiring> & factors)
{
    if (factors.empty())
        throw std::invalid_argument("direct product needs at least one factor");
    for (const auto & f : factors)
        require_well_formed(f);

    std::size_t n = 1;
    for (const auto & f : factors)
        n *= f.elements.size();

    FiniteSemiring result;
    result.name = "product";
    std::vector<int> coords(factors.size(), 0);
    auto decode = [&](std::size_t idx, std::vector<int> & out) {
        for (std::size_t i = factors.size(); i-- > 0;) {
            out[i] = static_cast<int>(idx % factors[i].elements.size());
            idx /= factors[i].elements.size();
        }
    };
    for (std::size_t idx = 0; idx < n; ++idx) {
        decode(idx, coords);
        std::string label = "(";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i)
                label += ",";
            label += factors[i].elements[coords[i]];
        }
        label += ")";
        result.elements.push_back(label);
    }

    result.add_table.resize(n * n);
    result.mul_table.resize(n * n);
    std::vector<int> ca(factors.size()), cb(factors.size());
    for (std::size_t a = 0; a < n; ++a) {
        decode(a, ca);
        for (std::size_t b = 0; b < n; ++b) {
            decode(b, cb);
            std::size_t sum = 0, prod = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                sum = sum * factors[i].elements.size() + factors[i].add(ca[i], cb[i]);
                prod = prod * factors[i].elements.size() + factors[i].mul(ca[i], cb[i]);
            }
            result.add_table[a * n + b] = static_cast<int>(sum);
            result.mul_table[a * n + b] = static_cast<int>(prod);
        }
    }
    return result;
}

struct SubalgebraResult {
    FiniteSemiring algebra;
    ElementMap inclusion;  // subalgebra index -> ambient index
};

/// Least subset of S closed under + and * containing the generators, via
/// worklist saturation. Element names are inherited from the ambient algebra.
inline SubalgebraResult generate_subalgebra(const FiniteSemiring & s, const std::vector<int> & generators)
{
    require_well_formed(s);
    if (generators.empty())
        throw std::invalid_argument("empty generating set");
    for (int g : generators)
        if (g < 0 || g >= s.size())
            throw std::invalid_argument("generator index out of range");

    std::vector<bool> in_closure(s.size(), false);
    std::vector<int> members;
    std::vector<int> work;
    for (int g : generators)
        if (! in_closure[g]) {
            in_closure[g] = true;
            members.push_back(g);
            work.push_back(g);
        }
    while (! work.empty()) {
        int x = work.back();
        work.pop_back();
        // snapshot: members may grow while we iterate
        std::vector<int> current = members;
        for (int y : current) {
            for (int z : {s.add(x, y), s.add(y, x), s.mul(x, y), s.mul(y, x)}) {
                if (! in_closure[z]) {
                    in_closure[z] = true;
                    members.push_back(z);
                    work.push_back(z);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());

    std::vector<int> ambient_to_sub(s.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        ambient_to_sub[members[i]] = static_cast<int>(i);

    SubalgebraResult result;
    result.inclusion.images = members;
    std::size_t m = members.size();
    result.algebra.name = s.name.empty() ? "subalgebra" : "subalgebra of " + s.name;
    for (int i : members)
        result.algebra.elements.push_back(s.elements[i]);
    result.algebra.add_table.resize(m * m);
    result.algebra.mul_table.resize(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            result.algebra.add_table[a * m + b] = ambient_to_sub[s.add(members[a], members[b])];
            result.algebra.mul_table[a * m + b] = ambient_to_sub[s.mul(members[a], members[b])];
        }
    return result;
}

/// A subset that is both a multiplicative absorbing ideal and an order filter.
struct IdealFilter {
    std::vector<int> members;
};

/// Returns an error description (with a counterexample pair) if J is not a
/// proper nonempty absorbing ideal and order filter of S.
inline std::optional<std::string> ideal_filter_violation(const FiniteSemiring & s, const IdealFilter & j)
{
    if (j.members.empty())
        return "ideal is empty";
    std::vector<bool> in_j(s.size(), false);
    for (int m : j.members) {
        if (m < 0 || m >= s.size())
            return "ideal member index out of range";
        in_j[m] = true;
    }
    if (static_cast<int>(j.members.size()) >= s.size())
        return "ideal is not proper";
    for (int m : j.members)
        for (int x = 0; x < s.size(); ++x) {
            if (! in_j[s.mul(m, x)])
                return "absorption fails: " + s.elements[m] + " * " + s.elements[x] + " = "
                    + s.elements[s.mul(m, x)] + " is outside J";
            if (! in_j[s.mul(x, m)])
                return "absorption fails: " + s.elements[x] + " * " + s.elements[m] + " = "
                    + s.elements[s.mul(x, m)] + " is outside J";
            if (s.add(m, x) == x && ! in_j[x])
                return "filter condition fails: " + s.elements[m] + " <= " + s.elements[x]
                    + " but " + s.elements[x] + " is outside J";
        }
    return std::nullopt;
}

struct QuotientResult {
    FiniteSemiring algebra;
    ElementMap projection;  // ambient index -> quotient index
};

/// Collapses J to a single fresh element named "[J]". The non-J elements keep
/// their names; the J-class sits at the last index.
inline QuotientResult ideal_quotient(const FiniteSemiring & s, const IdealFilter & j)
{
    if (auto err = ideal_filter_violation(s, j))
        throw std::invalid_argument("invalid ideal filter: " + *err);

    std::vector<bool> in_j(s.size(), false);
    for (int m : j.members)
        in_j[m] = true;

    QuotientResult result;
    result.projection.images.assign(s.size(), -1);
    for (int i = 0; i < s.size(); ++i)
        if (! in_j[i]) {
            result.projection.images[i] = static_cast<int>(result.algebra.elements.size());
            result.algebra.elements.push_back(s.elements[i]);
        }
    int j_class = static_cast<int>(result.algebra.elements.size());
    result.algebra.elements.push_back("[J]");
    for (int i = 0; i < s.size(); ++i)
        if (in_j[i])
            result.projection.images[i] = j_class;

    int n = static_cast<int>(result.algebra.elements.size());
    result.algebra.name = s.name.empty() ? "quotient" : s.name + "/J";
    result.algebra.add_table.assign(n * n, -1);
    result.algebra.mul_table.assign(n * n, -1);
    std::vector<int> representative(n, -1);
    for (int i = 0; i < s.size(); ++i)
        if (representative[result.projection(i)] < 0)
            representative[result.projection(i)] = i;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ra = representative[a], rb = representative[b];
            result.algebra.add_table[a * n + b] = result.projection(s.add(ra, rb));
            result.algebra.mul_table[a * n + b] = result.projection(s.mul(ra, rb));
        }
    return result;
}

namespace detail {

    // Iterated refinement of element colors from the two tables; used only to
    // prune the isomorphism search, never to decide it.
    inline std::vector<int> structure_colors(const FiniteSemiring & s)
    {
        int n = s.size();
        std::vector<int> color(n, 0);
        for (int round = 0; round < n; ++round) {
            std::map<std::vector<int>, int> classes;
            std::vector<int> next(n);
            for (int i = 0; i < n; ++i) {
                std::vector<int> sig;
                sig.push_back(color[i]);
                std::vector<int> row;
                for (int j = 0; j < n; ++j) {
                    row.push_back(color[s.add(i, j)] * (n + 1) + color[j]);
                    row.push_back(-1 - (color[s.mul(i, j)] * (n + 1) + color[j]));
                    row.push_back(color[s.mul(j, i)] * (n + 1) + color[j] + n * n * 4);
                }
                std::sort(row.begin(), row.end());
                sig.insert(sig.end(), row.begin(), row.end());
                auto [it, inserted] = classes.emplace(std::move(sig), static_cast<int>(classes.size()));
                next[i] = it->second;
            }
            if (next == color)
                break;
            color = next;
        }
        return color;
    }

} // namespace detail

struct IsoSearchResult {
    std::optional<ElementMap> map;
    std::uint64_t nodes = 0;
};

/// Backtracking search for an isomorphism, pruned by iterated table-profile
/// refinement. A returned map has been re-checked by brute force; absence of a
/// map means the pruned search space was exhausted.
inline IsoSearchResult find_isomorphism(const FiniteSemiring & s, const FiniteSemiring & t)
{
    require_well_formed(s);
    require_well_formed(t);
    IsoSearchResult result;
    int n = s.size();
    if (n != t.size())
        return result;

    std::vector<int> cs = detail::structure_colors(s);
    std::vector<int> ct = detail::structure_colors(t);

    // Color ids are not comparable across algebras, so candidate images are
    // matched on comparable per-element invariants plus color-class size.
    auto invariant = [](const FiniteSemiring & a, int i) {
        int n2 = a.size();
        std::vector<int> sig;
        sig.push_back(a.add(i, i) == i);
        sig.push_back(a.mul(i, i) == i);
        int as_add = 0, as_mul = 0;
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n2; ++k) {
                if (a.add(j, k) == i)
                    ++as_add;
                if (a.mul(j, k) == i)
                    ++as_mul;
            }
        sig.push_back(as_add);
        sig.push_back(as_mul);
        return sig;
    };

    std::vector<std::vector<int>> inv_s(n), inv_t(n);
    for (int i = 0; i < n; ++i) {
        inv_s[i] = invariant(s, i);
        inv_t[i] = invariant(t, i);
    }
    // Attach the color-class size as a further matching key.
    std::map<int, int> size_s, size_t_;
    for (int c : cs)
        ++size_s[c];
    for (int c : ct)
        ++size_t_[c];
    for (int i = 0; i < n; ++i) {
        inv_s[i].push_back(size_s[cs[i]]);
        inv_t[i].push_back(size_t_[ct[i]]);
    }

    {
        auto sorted_s = inv_s;
        auto sorted_t = inv_t;
        std::sort(sorted_s.begin(), sorted_s.end());
        std::sort(sorted_t.begin(), sorted_t.end());
        if (sorted_s != sorted_t)
            return result;  // invariant profiles already distinguish them
    }

    std::vector<std::vector<int>> candidates(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inv_s[i] == inv_t[j])
                candidates[i].push_back(j);

    // Assign s-elements in order of fewest candidates first.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
        [&](int a, int b) { return candidates[a].size() < candidates[b].size(); });

    std::vector<int> images(n, -1);
    std::vector<bool> used(n, false);

    auto consistent = [&](int i, int fi) {
        for (int j = 0; j < n; ++j) {
            if (images[j] < 0)
                continue;
            int ab = s.add(i, j), ba = s.add(j, i);
            int mb = s.mul(i, j), mc = s.mul(j, i);
            if (images[ab] >= 0 && images[ab] != t.add(fi, images[j]))
                return false;
            if (images[ba] >= 0 && images[ba] != t.add(images[j], fi))
                return false;
            if (images[mb] >= 0 && images[mb] != t.mul(fi, images[j]))
                return false;
            if (images[mc] >= 0 && images[mc] != t.mul(images[j], fi))
                return false;
        }
        return true;
    };

    std::uint64_t nodes = 0;
    auto search = [&](auto && self, int depth) -> bool {
        if (depth == n)
            return true;
        int i = order[depth];
        for (int fi : candidates[i]) {
            if (used[fi])
                continue;
            ++nodes;
            images[i] = fi;
            if (consistent(i, fi)) {
                used[fi] = true;
                if (self(self, depth + 1))
                    return true;
                used[fi] = false;
            }
            images[i] = -1;
        }
        return false;
    };

    bool found = search(search, 0);
    result.nodes = nodes;
    if (found) {
        ElementMap map{images};
        if (! is_isomorphism(s, t, map))
            throw std::logic_error("isomorphism search returned a non-isomorphism");
        result.map = map;
    }
    return result;
}

/// Multiplication is compatible with the natural order: a <= b implies
/// ca <= cb and ac <= bc. Checked exhaustively.
inline bool multiplication_order_compatible(const FiniteSemiring & s)
{
    NaturalOrder order = natural_order(s);
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            if (! order.below(a, b))
                continue;
            for (int c = 0; c < s.size(); ++c)
                if (! order.below(s.mul(c, a), s.mul(c, b))
                    || ! order.below(s.mul(a, c), s.mul(b, c)))
                    return false;
        }
    return true;
}

/// 0-cancellativity for an algebra with multiplicative zero: ab = ac != 0
/// implies b = c, and ab = cb != 0 implies a = c.
inline bool zero_cancellative(const FiniteSemiring & s, int zero)
{
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            for (int c = 0; c < s.size(); ++c) {
                if (s.mul(a, b) == s.mul(a, c) && s.mul(a, b) != zero && b != c)
                    return false;
                if (s.mul(a, b) == s.mul(c, b) && s.mul(a, b) != zero && a != c)
                    return false;
            }
    return true;
}

} // namespace semiring_lab
