#pragma once

#include <semiring_lab/finite_semiring.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiring_lab {

namespace detail {

    // Binary join in an explicitly given partial order; throws if some pair
    // has no least upper bound.
    inline std::vector<int> join_table(int n, const std::vector<bool> & leq)
    {
        std::vector<int> table(n * n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int join = -1;
                for (int u = 0; u < n; ++u) {
                    if (! leq[a * n + u] || ! leq[b * n + u])
                        continue;
                    if (join < 0 || leq[u * n + join])
                        join = u;
                }
                if (join < 0)
                    throw std::logic_error("pair without an upper bound");
                // re-check minimality: join must be below every upper bound
                for (int u = 0; u < n; ++u)
                    if (leq[a * n + u] && leq[b * n + u] && ! leq[join * n + u])
                        throw std::logic_error("pair without a least upper bound");
                table[a * n + b] = join;
            }
        return table;
    }

    // The six elements of the Brandt monoid as 2x2 matrices, in the order
    // 0, 1, e12, e21, e11, e22.
    inline const std::vector<std::array<int, 4>> & brandt_matrices()
    {
        static const std::vector<std::array<int, 4>> ms = {
            {0, 0, 0, 0},  // 0
            {1, 0, 0, 1},  // 1
            {0, 1, 0, 0},  // e12
            {0, 0, 1, 0},  // e21
            {1, 0, 0, 0},  // e11
            {0, 0, 0, 1},  // e22
        };
        return ms;
    }

    inline int brandt_mul(int a, int b)
    {
        const auto & ms = brandt_matrices();
        std::array<int, 4> p = {
            ms[a][0] * ms[b][0] + ms[a][1] * ms[b][2],
            ms[a][0] * ms[b][1] + ms[a][1] * ms[b][3],
            ms[a][2] * ms[b][0] + ms[a][3] * ms[b][2],
            ms[a][2] * ms[b][1] + ms[a][3] * ms[b][3],
        };
        for (int i = 0; i < static_cast<int>(ms.size()); ++i)
            if (ms[i] == p)
                return i;
        throw std::logic_error("matrix product left the Brandt monoid");
    }

} // namespace detail

inline FiniteSemiring builtin_S7()
{
    FiniteSemiring s;
    s.name = "S_7";
    s.elements = {"0", "a", "1"};
    s.add_table = {
        0, 0, 0,
        0, 1, 0,
        0, 0, 2};
    s.mul_table = {
        0, 0, 0,
        0, 0, 1,
        0, 1, 2};
    return s;
}

inline FiniteSemiring builtin_S53()
{
    FiniteSemiring s;
    s.name = "S_53";
    s.elements = {"0", "a", "1"};
    s.add_table = {
        0, 0, 0,
        0, 1, 1,
        0, 1, 2};
    s.mul_table = {
        0, 0, 0,
        0, 0, 1,
        0, 1, 2};
    return s;
}

/// The six-element Brandt monoid with matrix multiplication; addition is the
/// binary join in the Hasse order (1 below e11 and e22; everything except 1
/// covered by 0). The join table is derived, the order is the given data.
inline FiniteSemiring builtin_B21()
{
    FiniteSemiring s;
    s.name = "B_2^1";
    s.elements = {"0", "1", "e12", "e21", "e11", "e22"};
    int n = 6;
    int zero = 0, one = 1, e11 = 4, e22 = 5;

    std::vector<bool> leq(n * n, false);
    for (int i = 0; i < n; ++i) {
        leq[i * n + i] = true;
        leq[i * n + zero] = true;  // 0 is the greatest element
    }
    leq[one * n + e11] = true;
    leq[one * n + e22] = true;

    s.add_table = detail::join_table(n, leq);
    s.mul_table.resize(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            s.mul_table[a * n + b] = detail::brandt_mul(a, b);
    return s;
}

/// The subalgebra {0, e11, e12, e22} of B_2^1. Its addition is flat: without
/// 1 in the carrier, all binary joins of distinct elements collapse to 0.
inline FiniteSemiring builtin_B0()
{
    FiniteSemiring b21 = builtin_B21();
    FiniteSemiring s;
    s.name = "B_0";
    s.elements = {"0", "e11", "e12", "e22"};
    std::vector<int> ambient;
    for (const auto & e : s.elements)
        ambient.push_back(b21.require_index(e));
    int n = 4;
    s.add_table.resize(n * n);
    s.mul_table.resize(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int sum = b21.add(ambient[a], ambient[b]);
            int prod = b21.mul(ambient[a], ambient[b]);
            int si = -1, pi = -1;
            for (int i = 0; i < n; ++i) {
                if (ambient[i] == sum)
                    si = i;
                if (ambient[i] == prod)
                    pi = i;
            }
            if (si < 0 || pi < 0)
                throw std::logic_error("B_0 carrier is not closed in B_2^1");
            s.add_table[a * n + b] = si;
            s.mul_table[a * n + b] = pi;
        }
    return s;
}

/// B_2^1 with a new element "bot" adjoined as additive least element and
/// multiplicative zero.
inline FiniteSemiring builtin_Sigma7()
{
    FiniteSemiring b21 = builtin_B21();
    FiniteSemiring s;
    s.name = "Sigma_7";
    s.elements = b21.elements;
    s.elements.push_back("bot");
    int n = 7, bot = 6, m = 6;
    s.add_table.assign(n * n, bot);
    s.mul_table.assign(n * n, bot);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            s.add_table[a * n + b] = b21.add(a, b);
            s.mul_table[a * n + b] = b21.mul(a, b);
        }
    for (int a = 0; a < m; ++a) {
        s.add_table[a * n + bot] = a;  // bot + x = x
        s.add_table[bot * n + a] = a;
    }
    s.add_table[bot * n + bot] = bot;
    return s;
}

/// The two-element flat monoid semiring: multiplicative identity 1, zero 0,
/// flat addition.
inline FiniteSemiring builtin_M2()
{
    FiniteSemiring s;
    s.name = "M_2";
    s.elements = {"1", "0"};
    s.add_table = {
        0, 1,
        1, 1};
    s.mul_table = {
        0, 1,
        1, 1};
    return s;
}

inline std::vector<std::string> builtin_names()
{
    return {"S_7", "S_53", "B_0", "B_2^1", "Sigma_7", "M_2"};
}

inline FiniteSemiring builtin(const std::string & name)
{
    if (name == "S_7")
        return builtin_S7();
    if (name == "S_53")
        return builtin_S53();
    if (name == "B_0")
        return builtin_B0();
    if (name == "B_2^1")
        return builtin_B21();
    if (name == "Sigma_7")
        return builtin_Sigma7();
    if (name == "M_2")
        return builtin_M2();
    throw std::invalid_argument("unknown builtin algebra: " + name);
}

} // namespace semiring_lab
