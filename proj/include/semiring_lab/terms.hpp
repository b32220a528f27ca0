#pragma once

#include <semiring_lab/finite_semiring.hpp>

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiring_lab {

/// A nonempty word over variable names, in noncommutative form.
struct Word {
    std::vector<std::string> letters;

    auto operator<=>(const Word &) const = default;

    std::size_t length() const { return letters.size(); }

    int occurrences(const std::string & x) const
    {
        int count = 0;
        for (const auto & l : letters)
            if (l == x)
                ++count;
        return count;
    }

    std::set<std::string> content() const
    {
        return {letters.begin(), letters.end()};
    }
};

/// A term is a canonical finite set of words: sorted, duplicates removed.
/// Additive idempotency and commutativity are baked into the representation.
struct Term {
    std::vector<Word> words;

    auto operator<=>(const Term &) const = default;

    static Term of(std::vector<Word> ws)
    {
        if (ws.empty())
            throw std::invalid_argument("a term needs at least one word");
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        return Term{std::move(ws)};
    }

    std::set<std::string> content() const
    {
        std::set<std::string> vars;
        for (const auto & w : words)
            for (const auto & l : w.letters)
                vars.insert(l);
        return vars;
    }

    std::size_t letter_count() const
    {
        std::size_t total = 0;
        for (const auto & w : words)
            total += w.length();
        return total;
    }
};

struct Identity {
    Term lhs;
    Term rhs;

    auto operator<=>(const Identity &) const = default;

    bool trivial() const { return lhs == rhs; }

    std::set<std::string> content() const
    {
        std::set<std::string> vars = lhs.content();
        auto r = rhs.content();
        vars.insert(r.begin(), r.end());
        return vars;
    }
};

using Assignment = std::map<std::string, int>;

inline int eval(const FiniteSemiring & s, const Word & w, const Assignment & phi)
{
    auto image = [&](const std::string & x) {
        auto it = phi.find(x);
        if (it == phi.end())
            throw std::invalid_argument("unassigned variable: " + x);
        return it->second;
    };
    int value = image(w.letters.front());
    for (std::size_t i = 1; i < w.letters.size(); ++i)
        value = s.mul(value, image(w.letters[i]));
    return value;
}

inline int eval(const FiniteSemiring & s, const Term & t, const Assignment & phi)
{
    int value = eval(s, t.words.front(), phi);
    for (std::size_t i = 1; i < t.words.size(); ++i)
        value = s.add(value, eval(s, t.words[i], phi));
    return value;
}

inline constexpr std::uint64_t default_op_budget = 100'000'000;

enum class Outcome { Holds, Counterexample, TooLarge };

struct SatResult {
    Outcome outcome;
    Assignment counterexample;  // meaningful when outcome == Counterexample
    std::uint64_t ops = 0;
};

namespace detail {

    // Flattened view of an identity over a fixed variable list, for the
    // exhaustive enumerator: every word is a vector of variable slots.
    struct CompiledIdentity {
        std::vector<std::string> variables;
        std::vector<std::vector<int>> lhs, rhs;
    };

    inline CompiledIdentity compile(const Identity & id)
    {
        CompiledIdentity out;
        auto vars = id.content();
        out.variables.assign(vars.begin(), vars.end());
        std::map<std::string, int> slot;
        for (std::size_t i = 0; i < out.variables.size(); ++i)
            slot[out.variables[i]] = static_cast<int>(i);
        auto pack = [&](const Term & t) {
            std::vector<std::vector<int>> words;
            for (const auto & w : t.words) {
                std::vector<int> slots;
                for (const auto & l : w.letters)
                    slots.push_back(slot[l]);
                words.push_back(std::move(slots));
            }
            return words;
        };
        out.lhs = pack(id.lhs);
        out.rhs = pack(id.rhs);
        return out;
    }

    inline int eval_packed(const FiniteSemiring & s, const std::vector<std::vector<int>> & words,
        const std::vector<int> & values)
    {
        int total = -1;
        for (const auto & w : words) {
            int v = values[w[0]];
            for (std::size_t i = 1; i < w.size(); ++i)
                v = s.mul(v, values[w[i]]);
            total = total < 0 ? v : s.add(total, v);
        }
        return total;
    }

} // namespace detail

/// Exhaustive satisfaction check. Refuses (TooLarge) when the estimated
/// number of element operations exceeds the budget; it never samples.
inline SatResult satisfies(const FiniteSemiring & s, const Identity & id,
    std::uint64_t budget = default_op_budget)
{
    require_well_formed(s);
    detail::CompiledIdentity ci = detail::compile(id);
    std::size_t v = ci.variables.size();
    std::uint64_t per_assignment = id.lhs.letter_count() + id.rhs.letter_count();

    if (v == 0)  // cannot happen: words are nonempty
        return {Outcome::Holds, {}, 0};

    std::uint64_t assignments = 1;
    for (std::size_t i = 0; i < v; ++i) {
        if (assignments > budget / static_cast<std::uint64_t>(s.size()) + 1)
            return {Outcome::TooLarge, {}, 0};
        assignments *= static_cast<std::uint64_t>(s.size());
    }
    if (assignments > budget / std::max<std::uint64_t>(per_assignment, 1))
        return {Outcome::TooLarge, {}, 0};

    std::vector<int> values(v, 0);
    std::uint64_t ops = 0;
    for (std::uint64_t count = 0;; ++count) {
        ops += per_assignment;
        if (detail::eval_packed(s, ci.lhs, values) != detail::eval_packed(s, ci.rhs, values)) {
            Assignment cex;
            for (std::size_t i = 0; i < v; ++i)
                cex[ci.variables[i]] = values[i];
            // re-check through the plain evaluator before reporting
            if (eval(s, id.lhs, cex) == eval(s, id.rhs, cex))
                throw std::logic_error("counterexample failed re-evaluation");
            return {Outcome::Counterexample, cex, ops};
        }
        std::size_t i = 0;
        while (i < v && ++values[i] == s.size())
            values[i++] = 0;
        if (i == v)
            break;
    }
    return {Outcome::Holds, {}, ops};
}

struct SampleResult {
    bool counterexample_found;
    Assignment counterexample;
};

/// Seeded random search for a counterexample; inconclusive when none found.
inline SampleResult sample_satisfies(const FiniteSemiring & s, const Identity & id,
    std::uint64_t trials, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    detail::CompiledIdentity ci = detail::compile(id);
    std::size_t v = ci.variables.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, s.size() - 1);
    std::vector<int> values(v);
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto & x : values)
            x = pick(rng);
        if (detail::eval_packed(s, ci.lhs, values) != detail::eval_packed(s, ci.rhs, values)) {
            Assignment cex;
            for (std::size_t i = 0; i < v; ++i)
                cex[ci.variables[i]] = values[i];
            if (eval(s, id.lhs, cex) == eval(s, id.rhs, cex))
                throw std::logic_error("sampled counterexample failed re-evaluation");
            return {true, cex};
        }
    }
    return {false, {}};
}

/// u preceq v is shorthand for the identity u + v ~ v.
inline Identity preceq_identity(const Term & u, const Term & v)
{
    std::vector<Word> sum = u.words;
    sum.insert(sum.end(), v.words.begin(), v.words.end());
    return Identity{Term::of(std::move(sum)), v};
}

inline SatResult preceq(const FiniteSemiring & s, const Term & u, const Term & v,
    std::uint64_t budget = default_op_budget)
{
    return satisfies(s, preceq_identity(u, v), budget);
}

/// Regular identities are those with equal variable content on both sides;
/// they are exactly the identities of M_2.
inline bool is_regular(const Identity & id)
{
    return id.lhs.content() == id.rhs.content();
}

enum class IsotermVerdict { MinimalUpToBound, Violator, Inconclusive };

struct IsotermResult {
    IsotermVerdict verdict;
    std::optional<Word> violator;
};

/// Bounded isoterm check: enumerates all words u over c(w) with length up to
/// max_len and tests u preceq_S w. This is a semi-decision; a positive answer
/// certifies minimality only within the bound. Candidates range over c(w)
/// only, which is sound whenever M_2 embeds in S.
inline IsotermResult is_isoterm_bounded(const FiniteSemiring & s, const Word & w,
    std::size_t max_len, std::uint64_t budget = default_op_budget)
{
    if (max_len < w.length())
        throw std::invalid_argument("max_len must be at least the length of w");
    std::set<std::string> content = w.content();
    std::vector<std::string> alphabet(content.begin(), content.end());
    Term wt = Term::of({w});

    std::vector<int> digits;
    for (std::size_t len = 1; len <= max_len; ++len) {
        digits.assign(len, 0);
        for (;;) {
            Word u;
            for (int d : digits)
                u.letters.push_back(alphabet[d]);
            if (u != w) {
                SatResult r = preceq(s, Term::of({u}), wt, budget);
                if (r.outcome == Outcome::TooLarge)
                    return {IsotermVerdict::Inconclusive, {}};
                if (r.outcome == Outcome::Holds)
                    return {IsotermVerdict::Violator, u};
            }
            std::size_t i = len;
            while (i > 0 && ++digits[i - 1] == static_cast<int>(alphabet.size()))
                digits[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return {IsotermVerdict::MinimalUpToBound, {}};
}

/// The (k+1)-nilpotent identity x_1...x_{k+1} + y ~ x_1...x_{k+1}: every
/// (k+1)-fold product is the additive greatest element.
inline Identity nilpotent_identity(int k)
{
    if (k < 1)
        throw std::invalid_argument("nilpotency degree must be at least 1");
    Word product;
    for (int i = 1; i <= k + 1; ++i)
        product.letters.push_back("x" + std::to_string(i));
    Word y{{"y"}};
    return Identity{Term::of({product, y}), Term::of({product})};
}

// ---------------------------------------------------------------------------
// Parsing and formatting. Grammar:
//   identity = term "=" term ;  term = word ("+" word)* ;
//   word = variable ("*" variable)* ;  variables are alphanumeric tokens.

struct ParseError : std::runtime_error {
    std::size_t position;

    ParseError(std::size_t pos, const std::string & message)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + message),
          position(pos)
    {
    }
};

namespace detail {

    struct Parser {
        std::string_view text;
        std::size_t pos = 0;

        void skip_ws()
        {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
        }

        bool eat(char c)
        {
            skip_ws();
            if (pos < text.size() && text[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        std::string variable()
        {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size()
                && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            if (pos == start)
                throw ParseError(pos, "expected a variable");
            return std::string(text.substr(start, pos - start));
        }

        Word word()
        {
            Word w;
            w.letters.push_back(variable());
            while (eat('*'))
                w.letters.push_back(variable());
            return w;
        }

        Term term()
        {
            std::vector<Word> words;
            words.push_back(word());
            while (eat('+'))
                words.push_back(word());
            return Term::of(std::move(words));
        }

        void expect_end()
        {
            skip_ws();
            if (pos != text.size())
                throw ParseError(pos, "trailing input");
        }
    };

} // namespace detail

inline Term parse_term(std::string_view text)
{
    detail::Parser p{text};
    Term t = p.term();
    p.expect_end();
    return t;
}

inline Identity parse_identity(std::string_view text)
{
    detail::Parser p{text};
    Term lhs = p.term();
    if (! p.eat('='))
        throw ParseError(p.pos, "expected '='");
    Term rhs = p.term();
    p.expect_end();
    return Identity{lhs, rhs};
}

inline std::string format_word(const Word & w)
{
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i)
            out += "*";
        out += w.letters[i];
    }
    return out;
}

inline std::string format_term(const Term & t)
{
    std::string out;
    for (std::size_t i = 0; i < t.words.size(); ++i) {
        if (i)
            out += " + ";
        out += format_word(t.words[i]);
    }
    return out;
}

inline std::string format_identity(const Identity & id)
{
    return format_term(id.lhs) + " = " + format_term(id.rhs);
}

inline std::string format_assignment(const FiniteSemiring & s, const Assignment & phi)
{
    std::string out;
    for (const auto & [var, value] : phi) {
        if (! out.empty())
            out += ", ";
        out += var + " -> " + s.elements[value];
    }
    return out;
}

/// Deterministic corpus of random identities over variables x1..x{max_vars},
/// with at most max_words words per side of at most max_len letters each.
inline std::vector<Identity> identity_corpus(std::size_t count, std::uint64_t seed,
    int max_vars = 3, int max_words = 4, int max_len = 4)
{
    std::mt19937_64 rng(seed);
    std::vector<std::string> vars;
    for (int i = 1; i <= max_vars; ++i)
        vars.push_back("x" + std::to_string(i));

    auto random_word = [&]() {
        std::uniform_int_distribution<int> len_dist(1, max_len);
        std::uniform_int_distribution<int> var_dist(0, max_vars - 1);
        Word w;
        int len = len_dist(rng);
        for (int i = 0; i < len; ++i)
            w.letters.push_back(vars[var_dist(rng)]);
        return w;
    };
    auto random_term = [&]() {
        std::uniform_int_distribution<int> words_dist(1, max_words);
        std::vector<Word> words;
        int k = words_dist(rng);
        for (int i = 0; i < k; ++i)
            words.push_back(random_word());
        return Term::of(std::move(words));
    };

    std::vector<Identity> corpus;
    while (corpus.size() < count)
        corpus.push_back(Identity{random_term(), random_term()});
    return corpus;
}

} // namespace semiring_lab
