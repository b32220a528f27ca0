#pragma once

// Deliberately simple-minded reference implementations, used only to
// cross-check the satisfaction engine (by the test suite and the self-check
// report). They share no evaluation code with the engine: words are folded
// from the right, assignments are enumerated recursively over a std::map, and
// there is no compilation or canonicalization step.

#include <semiring_lab/finite_semiring.hpp>
#include <semiring_lab/terms.hpp>

#include <map>
#include <string>
#include <vector>

namespace naive {

inline int eval_word(const semiring_lab::FiniteSemiring & s, const semiring_lab::Word & w,
    const std::map<std::string, int> & phi)
{
    int value = phi.at(w.letters.back());
    for (auto it = w.letters.rbegin() + 1; it != w.letters.rend(); ++it)
        value = s.mul_table[phi.at(*it) * s.size() + value];
    return value;
}

inline int eval_term(const semiring_lab::FiniteSemiring & s, const semiring_lab::Term & t,
    const std::map<std::string, int> & phi)
{
    int value = eval_word(s, t.words.back(), phi);
    for (auto it = t.words.rbegin() + 1; it != t.words.rend(); ++it)
        value = s.add_table[eval_word(s, *it, phi) * s.size() + value];
    return value;
}

// Recursively tries every assignment of the identity's variables; returns
// true when no assignment separates the two sides.
inline bool holds(const semiring_lab::FiniteSemiring & s, const semiring_lab::Identity & id)
{
    const std::set<std::string> content = id.content();
    std::vector<std::string> vars(content.begin(), content.end());
    std::map<std::string, int> phi;
    auto recurse = [&](auto && self, std::size_t i) -> bool {
        if (i == vars.size())
            return eval_term(s, id.lhs, phi) == eval_term(s, id.rhs, phi);
        for (int v = 0; v < s.size(); ++v) {
            phi[vars[i]] = v;
            if (! self(self, i + 1))
                return false;
        }
        return true;
    };
    return recurse(recurse, 0);
}

} // namespace naive
