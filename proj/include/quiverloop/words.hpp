/*
 * words.hpp
 * ---------
 * Letters i^(d) and words over them: the total order (bigger exponent =
 * smaller letter, ties by vertex order, proper prefixes smaller), the
 * non-increasing predicate, associated and leading words of ordered
 * monomials, bounded enumeration, and the Sym-monomial test polynomials
 * whose leading word is prescribed.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomials.hpp"
#include "quiver.hpp"

namespace quiverloop {

struct Letter {
    int vertex = 0;
    int exponent = 0;

    bool operator==(const Letter& o) const {
        return vertex == o.vertex && exponent == o.exponent;
    }
    bool operator!=(const Letter& o) const { return !(*this == o); }
};

// i^(d) < j^(e) iff d > e, or d = e and i < j.
inline bool letter_less(const Letter& a, const Letter& b) {
    if (a.exponent != b.exponent) return a.exponent > b.exponent;
    return a.vertex < b.vertex;
}

struct Word {
    std::vector<Letter> letters;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    int vdeg() const {
        int d = 0;
        for (const auto& l : letters) d += l.exponent;
        return d;
    }

    ColorSignature hdeg(int num_vertices) const {
        std::vector<int> counts(static_cast<std::size_t>(num_vertices), 0);
        for (const auto& l : letters) counts.at(static_cast<std::size_t>(l.vertex)) += 1;
        return ColorSignature(std::move(counts));
    }

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

// Lexicographic extension with the proper-prefix rule: a proper prefix is
// smaller than any of its extensions.
inline bool word_less(const Word& a, const Word& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (a.letters[k] != b.letters[k])
            return letter_less(a.letters[k], b.letters[k]);
    }
    return a.size() < b.size();
}

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

// Non-increasing: for all a < b,
//   d_a < d_b + sum_{a <= s < b} #_{i_s i_b},  or equality with i_a >= i_b.
inline bool is_non_increasing(const Quiver& quiver, const Word& w) {
    const auto& ls = w.letters;
    for (std::size_t a = 0; a < ls.size(); ++a) {
        for (std::size_t b = a + 1; b < ls.size(); ++b) {
            int bound = ls[b].exponent;
            for (std::size_t s = a; s < b; ++s)
                bound += quiver.edge_count(ls[s].vertex, ls[b].vertex);
            if (ls[a].exponent < bound) continue;
            if (ls[a].exponent == bound && ls[a].vertex >= ls[b].vertex) continue;
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Ordered monomials and associated words.
// ---------------------------------------------------------------------------

// One variable of an ordered monomial: color, slot (within the color), and
// the exponent of the variable (k_a is its negation).
struct OrderedVar {
    int vertex = 0;
    int slot = 1;
    int exponent = 0;
};

// d_a = k_a + sum_{t > a} #_{i_a -> i_t} - sum_{s < a} #_{i_s -> i_a},
// with k_a = -exponent_a.
inline Word associated_word(const Quiver& quiver, const std::vector<OrderedVar>& mu) {
    for (std::size_t a = 0; a < mu.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (mu[a].vertex == mu[b].vertex && mu[a].slot == mu[b].slot)
                throw Error("associated_word: repeated variable in monomial");
    Word w;
    for (std::size_t a = 0; a < mu.size(); ++a) {
        int d = -mu[a].exponent;
        for (std::size_t t = a + 1; t < mu.size(); ++t) d += quiver.arrows(mu[a].vertex, mu[t].vertex);
        for (std::size_t s = 0; s < a; ++s) d -= quiver.arrows(mu[s].vertex, mu[a].vertex);
        w.letters.push_back({mu[a].vertex, d});
    }
    return w;
}

namespace detail {

// All associated words over orderings of the monomial's variables; fn
// receives each ordering's word. Exponents of a LaurentPoly term are turned
// into the OrderedVar list (every signature variable participates, zero
// exponents included).
inline std::vector<OrderedVar> monomial_vars(const ColorSignature& sig, const Exponents& e) {
    std::vector<OrderedVar> vars;
    for (std::size_t k = 0; k < e.size(); ++k) {
        auto [v, a] = sig.var_of(static_cast<int>(k));
        vars.push_back({v, a, e[k]});
    }
    return vars;
}

} // namespace detail

// The unique non-increasing associated word over all orderings of the
// monomial's variables (lex-largest associated word). Exhaustive over
// orderings; capped at 8 variables.
inline Word leading_word_of_monomial(const Quiver& quiver, const ColorSignature& sig,
                                     const Exponents& exps) {
    std::vector<OrderedVar> vars = detail::monomial_vars(sig, exps);
    if (vars.size() > 8) throw SignatureOverflow("leading word: more than 8 variables");
    std::vector<std::size_t> idx(vars.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::optional<Word> best;
    do {
        std::vector<OrderedVar> mu;
        for (std::size_t k : idx) mu.push_back(vars[k]);
        Word w = associated_word(quiver, mu);
        if (!best || word_less(*best, w)) best = std::move(w);
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (!best) return Word{};
    return *best;
}

// lead(R): lex-largest leading word over the monomials of R.
inline Word leading_word(const Quiver& quiver, const SymLaurent& R) {
    if (R.poly.is_zero()) throw ZeroPolynomial("leading word of the zero polynomial");
    std::optional<Word> best;
    for (const auto& [e, c] : R.poly.terms()) {
        Word w = leading_word_of_monomial(quiver, R.poly.signature(), e);
        if (!best || word_less(*best, w)) best = std::move(w);
    }
    return *best;
}

// ---------------------------------------------------------------------------
// Enumeration of non-increasing words.
// ---------------------------------------------------------------------------

struct WordBounds {
    std::optional<Word> upper; // keep words <= upper
    std::optional<Word> lower; // keep words >= lower
};

// All non-increasing words of the given degree whose letter exponents lie in
// [lo, hi], within the optional word-order bounds, sorted descending.
inline std::vector<Word> enumerate_non_increasing(const Quiver& quiver, const ColorSignature& hdeg,
                                                  int vdeg, int lo, int hi,
                                                  const WordBounds& bounds = {}) {
    std::vector<Word> out;
    if (hi < lo) return out;
    const int total = hdeg.total();
    std::vector<int> remaining(hdeg.counts());

    Word current;
    std::function<void(int, int)> rec = [&](int pos, int dsum) {
        if (pos == total) {
            if (dsum != vdeg) return;
            if (!is_non_increasing(quiver, current)) return;
            if (bounds.upper && word_less(*bounds.upper, current)) return;
            if (bounds.lower && word_less(current, *bounds.lower)) return;
            out.push_back(current);
            return;
        }
        const int left = total - pos - 1;
        for (int v = 0; v < static_cast<int>(remaining.size()); ++v) {
            if (remaining[static_cast<std::size_t>(v)] == 0) continue;
            remaining[static_cast<std::size_t>(v)]--;
            for (int d = lo; d <= hi; ++d) {
                // the remaining letters can still reach the degree target
                if (dsum + d + static_cast<long>(left) * lo > vdeg) continue;
                if (dsum + d + static_cast<long>(left) * hi < vdeg) continue;
                current.letters.push_back({v, d});
                // prefix pruning: the predicate is pairwise, so a violation
                // already present in the prefix never heals
                bool ok = true;
                const std::size_t b = current.letters.size() - 1;
                for (std::size_t a = 0; a < b && ok; ++a) {
                    int bound = current.letters[b].exponent;
                    for (std::size_t s = a; s < b; ++s)
                        bound += quiver.edge_count(current.letters[s].vertex,
                                                   current.letters[b].vertex);
                    if (current.letters[a].exponent < bound) continue;
                    if (current.letters[a].exponent == bound &&
                        current.letters[a].vertex >= current.letters[b].vertex)
                        continue;
                    ok = false;
                }
                if (ok) rec(pos + 1, dsum + d);
                current.letters.pop_back();
            }
            remaining[static_cast<std::size_t>(v)]++;
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return word_less(b, a); });
    return out;
}

// ---------------------------------------------------------------------------
// Test polynomials: Sym mu with lead(Sym mu) = w.
// ---------------------------------------------------------------------------

// Invert the associated-word rule: k_a = d_a - sum_{t>a} #_{i_a -> i_t}
// + sum_{s<a} #_{i_s -> i_a}; slots are assigned per color in order of
// appearance.
inline std::vector<OrderedVar> monomial_of_word(const Quiver& quiver, const Word& w) {
    std::vector<OrderedVar> mu;
    std::vector<int> used(static_cast<std::size_t>(quiver.vertex_count()), 0);
    for (std::size_t a = 0; a < w.letters.size(); ++a) {
        int k = w.letters[a].exponent;
        for (std::size_t t = a + 1; t < w.letters.size(); ++t)
            k -= quiver.arrows(w.letters[a].vertex, w.letters[t].vertex);
        for (std::size_t s = 0; s < a; ++s)
            k += quiver.arrows(w.letters[s].vertex, w.letters[a].vertex);
        int slot = ++used[static_cast<std::size_t>(w.letters[a].vertex)];
        mu.push_back({w.letters[a].vertex, slot, -k});
    }
    return mu;
}

// Sym mu as a SymLaurent; requires w non-increasing so that lead = w.
inline SymLaurent test_polynomial(const Quiver& quiver, const Word& w) {
    if (!is_non_increasing(quiver, w))
        throw NotNonIncreasing("test polynomial requires a non-increasing word");
    ColorSignature sig = w.hdeg(quiver.vertex_count());
    std::vector<OrderedVar> mu = monomial_of_word(quiver, w);
    Exponents e(static_cast<std::size_t>(sig.total()), 0);
    for (const auto& v : mu)
        e[static_cast<std::size_t>(sig.var_index(v.vertex, v.slot))] = v.exponent;
    LaurentPoly p = LaurentPoly::monomial(quiver.ring(), sig, std::move(e),
                                          ParamScalar::one(quiver.ring()));
    return make_sym_laurent(symmetrize(p));
}

// ---------------------------------------------------------------------------
// Text form: `[i^(2) j^(-1)]` with config vertex names.
// ---------------------------------------------------------------------------

inline std::string to_string(const Word& w, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "[";
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
        if (k) out << " ";
        out << names.at(static_cast<std::size_t>(w.letters[k].vertex)) << "^("
            << w.letters[k].exponent << ")";
    }
    out << "]";
    return out.str();
}

inline Word parse_word(const std::string& text, const std::vector<std::string>& names,
                       int lineno = 0) {
    std::size_t k = 0;
    auto skip_ws = [&] {
        while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    };
    skip_ws();
    if (k >= text.size() || text[k] != '[') throw ParseError("expected '['", lineno);
    ++k;
    Word w;
    for (;;) {
        skip_ws();
        if (k < text.size() && text[k] == ']') { ++k; break; }
        std::size_t start = k;
        while (k < text.size() && text[k] != '^') ++k;
        if (k >= text.size()) throw ParseError("expected '^('", lineno);
        std::string name = text.substr(start, k - start);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
            name.pop_back();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw UnknownVertex("unknown vertex " + name);
        ++k; // '^'
        if (k >= text.size() || text[k] != '(') throw ParseError("expected '('", lineno);
        ++k;
        std::size_t estart = k;
        while (k < text.size() && text[k] != ')') ++k;
        if (k >= text.size()) throw ParseError("expected ')'", lineno);
        int exp = std::stoi(text.substr(estart, k - estart));
        ++k;
        w.letters.push_back({static_cast<int>(it - names.begin()), exp});
    }
    skip_ws();
    if (k != text.size()) throw ParseError("trailing characters after word", lineno);
    return w;
}

} // namespace quiverloop
