#pragma once

#include <semiring_lab/finite_semiring.hpp>
#include <semiring_lab/terms.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiring_lab {

enum class SubwordMode { Factor, Divisor };
enum class OrderKind { Flat, Divisibility };

/// A finite word set plus flags determining a constructed algebra. In
/// commutative mode words are canonicalized to sorted letter sequences and
/// subwords are multiset divisors; in noncommutative mode subwords are
/// contiguous factors. An empty word is admitted only with with_identity.
struct WordSemiringSpec {
    std::vector<Word> words;
    bool commutative = false;
    bool with_identity = false;
    OrderKind order = OrderKind::Flat;
};

namespace detail {

    inline Word sorted_word(Word w)
    {
        std::sort(w.letters.begin(), w.letters.end());
        return w;
    }

    // multiset inclusion on sorted words
    inline bool divides(const Word & u, const Word & v)
    {
        std::size_t i = 0, j = 0;
        while (i < u.letters.size() && j < v.letters.size()) {
            if (u.letters[i] == v.letters[j]) {
                ++i;
                ++j;
            } else if (u.letters[i] < v.letters[j]) {
                return false;
            } else {
                ++j;
            }
        }
        return i == u.letters.size();
    }

    inline std::string commutative_name(const Word & w)
    {
        if (w.letters.empty())
            return "1";
        std::string out;
        std::size_t i = 0;
        while (i < w.letters.size()) {
            std::size_t j = i;
            while (j < w.letters.size() && w.letters[j] == w.letters[i])
                ++j;
            if (! out.empty())
                out += "*";
            out += w.letters[i];
            if (j - i > 1)
                out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }

    inline std::string word_name(const Word & w, bool commutative)
    {
        if (w.letters.empty())
            return "1";
        return commutative ? commutative_name(w) : format_word(w);
    }

} // namespace detail

/// All nonempty subwords of the given words: contiguous infixes in factor
/// mode, sub-multisets in divisor mode (inputs canonicalized to sorted form).
inline std::vector<Word> subword_closure(const std::vector<Word> & words, SubwordMode mode)
{
    if (words.empty())
        throw std::invalid_argument("empty word set");
    std::set<Word> closure;
    if (mode == SubwordMode::Factor) {
        for (const auto & w : words)
            for (std::size_t start = 0; start < w.letters.size(); ++start)
                for (std::size_t len = 1; start + len <= w.letters.size(); ++len)
                    closure.insert(Word{{w.letters.begin() + start, w.letters.begin() + start + len}});
    } else {
        for (const auto & w : words) {
            Word sorted = detail::sorted_word(w);
            // enumerate sub-multisets via per-letter exponent counters
            std::vector<std::pair<std::string, int>> exps;
            for (const auto & l : sorted.letters) {
                if (! exps.empty() && exps.back().first == l)
                    ++exps.back().second;
                else
                    exps.emplace_back(l, 1);
            }
            std::vector<int> pick(exps.size(), 0);
            for (;;) {
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] > exps[i].second)
                    pick[i++] = 0;
                if (i == pick.size())
                    break;
                Word sub;
                for (std::size_t j = 0; j < exps.size(); ++j)
                    for (int c = 0; c < pick[j]; ++c)
                        sub.letters.push_back(exps[j].first);
                closure.insert(sub);
            }
        }
    }
    std::vector<Word> out(closure.begin(), closure.end());
    std::sort(out.begin(), out.end(), [](const Word & a, const Word & b) {
        return a.length() != b.length() ? a.length() < b.length() : a < b;
    });
    return out;
}

/// A constructed algebra together with the word attached to each carrier
/// index. zero_index is always the last element; one_index is set when the
/// empty word is in the carrier.
struct WordSemiring {
    FiniteSemiring algebra;
    std::vector<Word> carrier_words;  // aligned with algebra.elements; zero slot holds an empty marker
    int zero_index = -1;
    std::optional<int> one_index;
    bool commutative = false;

    int index_of_word(const Word & w) const
    {
        Word key = commutative ? detail::sorted_word(w) : w;
        for (int i = 0; i < static_cast<int>(carrier_words.size()); ++i)
            if (i != zero_index && carrier_words[i] == key)
                return i;
        return -1;
    }
};

namespace detail {

    struct WordCarrier {
        std::vector<Word> words;  // closure, optionally preceded by the empty word
        std::optional<int> one_index;
        int zero_index;
    };

    inline WordCarrier build_carrier(const WordSemiringSpec & spec)
    {
        std::vector<Word> input;
        bool saw_empty = false;
        for (const auto & w : spec.words) {
            if (w.letters.empty())
                saw_empty = true;
            else
                input.push_back(spec.commutative ? sorted_word(w) : w);
        }
        if (saw_empty && ! spec.with_identity)
            throw std::invalid_argument("empty word requires with_identity");

        WordCarrier carrier;
        if (spec.with_identity) {
            carrier.one_index = 0;
            carrier.words.push_back(Word{});
        }
        if (! input.empty()) {
            SubwordMode mode = spec.commutative ? SubwordMode::Divisor : SubwordMode::Factor;
            for (auto & w : subword_closure(input, mode))
                carrier.words.push_back(std::move(w));
        } else if (! spec.with_identity) {
            throw std::invalid_argument("empty word set");
        }
        carrier.zero_index = static_cast<int>(carrier.words.size());
        return carrier;
    }

    inline Word concatenate(const Word & u, const Word & v, bool commutative)
    {
        Word out;
        out.letters = u.letters;
        out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
        return commutative ? sorted_word(out) : out;
    }

    inline Word exponent_sup(const Word & u, const Word & v)
    {
        // componentwise max of exponent vectors, on sorted words
        Word out;
        std::size_t i = 0, j = 0;
        while (i < u.letters.size() || j < v.letters.size()) {
            if (j == v.letters.size() || (i < u.letters.size() && u.letters[i] < v.letters[j])) {
                out.letters.push_back(u.letters[i++]);
            } else if (i == u.letters.size() || v.letters[j] < u.letters[i]) {
                out.letters.push_back(v.letters[j++]);
            } else {
                out.letters.push_back(u.letters[i]);
                ++i;
                ++j;
            }
        }
        return out;
    }

    inline WordSemiring build_word_semiring(const WordSemiringSpec & spec)
    {
        if (spec.order == OrderKind::Divisibility && ! spec.commutative)
            throw std::invalid_argument("divisibility order requires a commutative spec");

        WordCarrier carrier = build_carrier(spec);
        int n = static_cast<int>(carrier.words.size()) + 1;
        int zero = carrier.zero_index;

        std::map<Word, int> index;
        for (int i = 0; i < zero; ++i)
            index[carrier.words[i]] = i;

        WordSemiring out;
        out.commutative = spec.commutative;
        out.zero_index = zero;
        out.one_index = carrier.one_index;
        out.carrier_words = carrier.words;
        out.carrier_words.push_back(Word{});  // placeholder for the zero slot

        auto & alg = out.algebra;
        for (int i = 0; i < zero; ++i)
            alg.elements.push_back(word_name(carrier.words[i], spec.commutative));
        alg.elements.push_back("0");

        alg.mul_table.assign(n * n, zero);
        for (int a = 0; a < zero; ++a)
            for (int b = 0; b < zero; ++b) {
                Word product = concatenate(carrier.words[a], carrier.words[b], spec.commutative);
                auto it = index.find(product);
                alg.mul_table[a * n + b] = it == index.end() ? zero : it->second;
            }

        alg.add_table.assign(n * n, zero);
        if (spec.order == OrderKind::Flat) {
            for (int a = 0; a < n; ++a)
                alg.add_table[a * n + a] = a;
        } else {
            for (int a = 0; a < zero; ++a)
                for (int b = 0; b < zero; ++b) {
                    Word sup = exponent_sup(carrier.words[a], carrier.words[b]);
                    auto it = index.find(sup);
                    alg.add_table[a * n + b] = it == index.end() ? zero : it->second;
                }
            alg.add_table[zero * n + zero] = zero;
        }
        return out;
    }

} // namespace detail

/// Flat semiring on the subword closure: x + x = x, x + y = 0 for distinct
/// x, y; multiplication is concatenation when the result stays in the
/// closure and 0 otherwise.
inline WordSemiring flat_word_semiring(WordSemiringSpec spec)
{
    spec.order = OrderKind::Flat;
    WordSemiring out = detail::build_word_semiring(spec);
    std::string prefix = spec.with_identity ? "M" : "S";
    if (spec.commutative)
        prefix += "_c";
    out.algebra.name = prefix + "(W)";
    return out;
}

/// Commutative word semiring under the divisibility order: u + v is the
/// componentwise-max exponent vector when that lies in the closure, else 0.
inline WordSemiring divisibility_semiring(WordSemiringSpec spec)
{
    spec.order = OrderKind::Divisibility;
    spec.commutative = true;
    WordSemiring out = detail::build_word_semiring(spec);
    out.algebra.name = spec.with_identity ? "M_c*(W)" : "S_c*(W)";
    return out;
}

/// The linear word a_1 a_2 ... a_n (letters "a1".."an").
inline Word linear_word(int n, const std::string & stem = "a")
{
    if (n < 1)
        throw std::invalid_argument("linear word length must be positive");
    Word w;
    for (int i = 1; i <= n; ++i)
        w.letters.push_back(stem + std::to_string(i));
    return w;
}

/// The word a^p (p >= 0; p = 0 is the empty word).
inline Word power_word(int p, const std::string & letter = "a")
{
    Word w;
    for (int i = 0; i < p; ++i)
        w.letters.push_back(letter);
    return w;
}

/// The quotient of max-plus by everything >= cutoff: carrier 0..cutoff-1
/// plus an absorbing top, addition is max, multiplication saturating sum.
inline FiniteSemiring truncated_max_plus(int cutoff)
{
    if (cutoff < 1)
        throw std::invalid_argument("cutoff must be at least 1");
    FiniteSemiring s;
    s.name = "maxplus/" + std::to_string(cutoff);
    for (int i = 0; i < cutoff; ++i)
        s.elements.push_back(std::to_string(i));
    s.elements.push_back("top");
    int n = cutoff + 1, top = cutoff;
    s.add_table.resize(n * n);
    s.mul_table.resize(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            s.add_table[a * n + b] = (a == top || b == top) ? top : std::max(a, b);
            s.mul_table[a * n + b] = (a == top || b == top || a + b >= cutoff) ? top : a + b;
        }
    return s;
}

/// Adjoins a new element absorbing for both operations (the regularization).
inline FiniteSemiring s_infinity(const FiniteSemiring & s)
{
    require_well_formed(s);
    FiniteSemiring out;
    out.name = s.name.empty() ? "S^inf" : s.name + "^inf";
    out.elements = s.elements;
    out.elements.push_back("inf");
    int m = s.size(), n = m + 1, inf = m;
    out.add_table.assign(n * n, inf);
    out.mul_table.assign(n * n, inf);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            out.add_table[a * n + b] = s.add(a, b);
            out.mul_table[a * n + b] = s.mul(a, b);
        }
    return out;
}

/// Finite corroboration of the subdirect decomposition of max-plus into its
/// truncations: on the segment {0..K}, the tuple map through the quotients
/// at cutoffs 1..K+1 is injective and preserves both operations where the
/// results stay inside the segment. Coordinates 1..K are checked surjective;
/// the K+1 coordinate only separates points.
struct SubdirectReport {
    int segment;  // K
    bool injective = false;
    bool operations_preserved = false;
    std::vector<bool> coordinate_surjective;  // cutoffs 1..K
    std::string note;

    bool ok() const
    {
        if (! injective || ! operations_preserved)
            return false;
        for (bool s : coordinate_surjective)
            if (! s)
                return false;
        return true;
    }
};

inline SubdirectReport subdirect_maxplus_check(int segment)
{
    if (segment < 1)
        throw std::invalid_argument("segment must be at least 1");
    SubdirectReport report;
    report.segment = segment;

    // image of n in the cutoff-k truncation: n itself below k, else top (= k)
    auto image = [](int n, int k) { return n < k ? n : k; };
    auto tuple_of = [&](int n) {
        std::vector<int> t;
        for (int k = 1; k <= segment + 1; ++k)
            t.push_back(image(n, k));
        return t;
    };

    report.injective = true;
    for (int m = 0; m <= segment; ++m)
        for (int n = m + 1; n <= segment; ++n)
            if (tuple_of(m) == tuple_of(n))
                report.injective = false;

    report.operations_preserved = true;
    for (int m = 0; m <= segment; ++m)
        for (int n = 0; n <= segment; ++n)
            for (int k = 1; k <= segment + 1; ++k) {
                FiniteSemiring trunc = truncated_max_plus(k);
                if (trunc.add(image(m, k), image(n, k)) != image(std::max(m, n), k))
                    report.operations_preserved = false;
                if (m + n <= segment
                    && trunc.mul(image(m, k), image(n, k)) != image(m + n, k))
                    report.operations_preserved = false;
            }

    for (int k = 1; k <= segment; ++k) {
        std::set<int> hit;
        for (int n = 0; n <= segment; ++n)
            hit.insert(image(n, k));
        report.coordinate_surjective.push_back(static_cast<int>(hit.size()) == k + 1);
    }
    report.note = "cutoff " + std::to_string(segment + 1)
        + " separates the segment but is not surjective on it";
    return report;
}

/// Parses a comma-separated word list: letters are alphanumeric tokens joined
/// by '*', with an optional ^exponent in commutative mode; "1" denotes the
/// empty word.
inline std::vector<Word> parse_word_list(std::string_view text, bool commutative)
{
    std::vector<Word> words;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    while (true) {
        skip_ws();
        Word w;
        for (;;) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size()
                && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            if (pos == start)
                throw ParseError(pos, "expected a letter");
            std::string letter(text.substr(start, pos - start));
            int exponent = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                if (! commutative)
                    throw ParseError(pos, "exponents are only allowed in commutative mode");
                ++pos;
                skip_ws();
                std::size_t estart = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (pos == estart)
                    throw ParseError(pos, "expected an exponent");
                exponent = std::stoi(std::string(text.substr(estart, pos - estart)));
            }
            if (letter == "1" && w.letters.empty() && exponent == 1) {
                // the empty word
            } else {
                for (int i = 0; i < exponent; ++i)
                    w.letters.push_back(letter);
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        words.push_back(std::move(w));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    skip_ws();
    if (pos != text.size())
        throw ParseError(pos, "trailing input");
    return words;
}

} // namespace semiring_lab
