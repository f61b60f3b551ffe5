/*
 * polynomials.hpp
 * ---------------
 * Colored multivariate Laurent polynomials in the variables z[v,a] (vertex
 * color v, slot a) with exact field coefficients: arithmetic, per-color
 * symmetrization (plain orbit sum), monomial-scaled variable substitution,
 * derivatives, and exact division by powers of linear forms z_j - c*z_i.
 *
 * Variables are laid out per the fixed color order: slot a of color v has
 * flat index offset(v)+a-1, and exponent vectors are keyed in that layout.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalars.hpp"

namespace quiverloop {

class ColorSignature {
public:
    ColorSignature() = default;
    explicit ColorSignature(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int c : counts_)
            if (c < 0) throw Error("ColorSignature: negative slot count");
    }

    static ColorSignature unit(std::size_t num_colors, int vertex) {
        std::vector<int> c(num_colors, 0);
        c.at(static_cast<std::size_t>(vertex)) = 1;
        return ColorSignature(std::move(c));
    }

    const std::vector<int>& counts() const { return counts_; }
    std::size_t num_colors() const { return counts_.size(); }
    int count(int vertex) const { return counts_.at(static_cast<std::size_t>(vertex)); }

    int total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

    int offset(int vertex) const {
        int o = 0;
        for (int v = 0; v < vertex; ++v) o += counts_[static_cast<std::size_t>(v)];
        return o;
    }

    // Flat variable index of slot a (1-based) of color v.
    int var_index(int vertex, int slot) const {
        if (vertex < 0 || static_cast<std::size_t>(vertex) >= counts_.size())
            throw UnknownVertex("signature has no vertex " + std::to_string(vertex));
        if (slot < 1 || slot > count(vertex))
            throw Error("slot out of range for signature");
        return offset(vertex) + slot - 1;
    }

    // (vertex, slot) of a flat index.
    std::pair<int, int> var_of(int index) const {
        int o = 0;
        for (std::size_t v = 0; v < counts_.size(); ++v) {
            if (index < o + counts_[v]) return {static_cast<int>(v), index - o + 1};
            o += counts_[v];
        }
        throw Error("variable index out of range");
    }

    ColorSignature operator+(const ColorSignature& o) const {
        if (counts_.size() != o.counts_.size()) throw SignatureMismatch("color count differs");
        std::vector<int> c(counts_);
        for (std::size_t v = 0; v < c.size(); ++v) c[v] += o.counts_[v];
        return ColorSignature(std::move(c));
    }

    bool operator==(const ColorSignature& o) const { return counts_ == o.counts_; }
    bool operator!=(const ColorSignature& o) const { return !(*this == o); }
    bool operator<(const ColorSignature& o) const { return counts_ < o.counts_; }

private:
    std::vector<int> counts_;
};

class LaurentPoly {
public:
    using TermMap = std::map<Exponents, ParamScalar>;

    LaurentPoly() = default;
    LaurentPoly(RingPtr ring, ColorSignature sig) : ring_(std::move(ring)), sig_(std::move(sig)) {}

    static LaurentPoly zero(RingPtr ring, ColorSignature sig) {
        return LaurentPoly(std::move(ring), std::move(sig));
    }

    static LaurentPoly constant(RingPtr ring, ColorSignature sig, const ParamScalar& c) {
        LaurentPoly p(std::move(ring), std::move(sig));
        if (!c.is_zero()) p.terms_.emplace(Exponents(static_cast<std::size_t>(p.sig_.total()), 0), c);
        return p;
    }

    static LaurentPoly monomial(RingPtr ring, ColorSignature sig, Exponents exps,
                                const ParamScalar& c) {
        LaurentPoly p(std::move(ring), std::move(sig));
        if (exps.size() != static_cast<std::size_t>(p.sig_.total()))
            throw Error("LaurentPoly: exponent arity mismatch");
        if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const ColorSignature& signature() const { return sig_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int num_vars() const { return sig_.total(); }

    bool operator==(const LaurentPoly& o) const { return sig_ == o.sig_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    void add_term(const Exponents& e, const ParamScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r(ring_, sig_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_compatible(b);
        LaurentPoly r(a.ring_, a.sig_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator*(const LaurentPoly& a, const ParamScalar& s) {
        LaurentPoly r(a.ring_, a.sig_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend LaurentPoly operator*(const ParamScalar& s, const LaurentPoly& a) { return a * s; }

    // Multiply by the single variable `var` raised to `k`.
    LaurentPoly var_shifted(int var, int k) const {
        LaurentPoly r(ring_, sig_);
        for (const auto& [e, c] : terms_) {
            Exponents f(e);
            f[static_cast<std::size_t>(var)] += k;
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    // Map this polynomial into a larger signature; slot a of color v becomes
    // slot a + slot_offset[v].
    LaurentPoly embedded(const ColorSignature& target, const std::vector<int>& slot_offset) const {
        LaurentPoly r(ring_, target);
        const int n = sig_.total();
        std::vector<int> newindex(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            auto [v, a] = sig_.var_of(k);
            newindex[static_cast<std::size_t>(k)] =
                target.var_index(v, a + slot_offset.at(static_cast<std::size_t>(v)));
        }
        for (const auto& [e, c] : terms_) {
            Exponents f(static_cast<std::size_t>(target.total()), 0);
            for (int k = 0; k < n; ++k) f[static_cast<std::size_t>(newindex[static_cast<std::size_t>(k)])] = e[static_cast<std::size_t>(k)];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    // Apply a flat variable permutation: variable k of the result reads the
    // exponent that variable perm[k] had in the source.
    LaurentPoly permuted(const std::vector<int>& perm) const {
        LaurentPoly r(ring_, sig_);
        for (const auto& [e, c] : terms_) {
            Exponents f(e.size());
            for (std::size_t k = 0; k < e.size(); ++k)
                f[k] = e[static_cast<std::size_t>(perm[k])];
            r.add_term(f, c);
        }
        return r;
    }

    // d/d z_var (Laurent rule: z^k -> k z^{k-1}).
    LaurentPoly derivative(int var) const {
        LaurentPoly r(ring_, sig_);
        for (const auto& [e, c] : terms_) {
            int k = e[static_cast<std::size_t>(var)];
            if (k == 0) continue;
            Exponents f(e);
            f[static_cast<std::size_t>(var)] = k - 1;
            r.add_term(f, c * ParamScalar::integer(ring_, k));
        }
        return r;
    }

    int min_exponent() const {
        int m = 0;
        bool first = true;
        for (const auto& [e, c] : terms_)
            for (int x : e) {
                if (first) { m = x; first = false; }
                m = std::min(m, x);
            }
        return m;
    }
    int max_exponent() const {
        int m = 0;
        bool first = true;
        for (const auto& [e, c] : terms_)
            for (int x : e) {
                if (first) { m = x; first = false; }
                m = std::max(m, x);
            }
        return m;
    }

private:
    void check_compatible(const LaurentPoly& o) const {
        require_same_ring(ring_, o.ring_);
        if (sig_ != o.sig_) throw SignatureMismatch("color signatures differ");
    }

    RingPtr ring_;
    ColorSignature sig_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Per-color slot permutations.
// ---------------------------------------------------------------------------

namespace detail {

// All flat-variable permutations induced by permuting slots within each
// color independently; sign carried along for antisymmetrized sums.
inline void for_each_color_permutation(const ColorSignature& sig,
                                       const std::function<void(const std::vector<int>&, int)>& fn) {
    const int n = sig.total();
    std::vector<std::vector<int>> groups;
    for (std::size_t v = 0; v < sig.num_colors(); ++v) {
        std::vector<int> g(static_cast<std::size_t>(sig.counts()[v]));
        std::iota(g.begin(), g.end(), sig.offset(static_cast<int>(v)));
        groups.push_back(std::move(g));
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    std::function<void(std::size_t, int)> rec = [&](std::size_t gi, int sign) {
        if (gi == groups.size()) {
            fn(perm, sign);
            return;
        }
        std::vector<int> idx = groups[gi];
        std::sort(idx.begin(), idx.end());
        std::vector<int> arrangement = idx;
        // iterate permutations of this group's slots with their parity
        std::vector<int> base = idx;
        do {
            int sgn = 1;
            // parity of `arrangement` relative to `base` by counting inversions
            for (std::size_t x = 0; x < arrangement.size(); ++x)
                for (std::size_t y = x + 1; y < arrangement.size(); ++y)
                    if (arrangement[x] > arrangement[y]) sgn = -sgn;
            for (std::size_t x = 0; x < base.size(); ++x)
                perm[static_cast<std::size_t>(base[x])] = arrangement[x];
            rec(gi + 1, sign * sgn);
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        for (std::size_t x = 0; x < base.size(); ++x)
            perm[static_cast<std::size_t>(base[x])] = base[x];
    };
    rec(0, 1);
}

} // namespace detail

// Plain orbit sum over all products of per-color slot permutations.
inline LaurentPoly symmetrize(const LaurentPoly& p) {
    LaurentPoly r = LaurentPoly::zero(p.ring(), p.signature());
    detail::for_each_color_permutation(p.signature(), [&](const std::vector<int>& perm, int) {
        r += p.permuted(perm);
    });
    return r;
}

// Signed orbit sum (used to clear symmetrization denominators).
inline LaurentPoly antisymmetrize(const LaurentPoly& p) {
    LaurentPoly r = LaurentPoly::zero(p.ring(), p.signature());
    detail::for_each_color_permutation(p.signature(), [&](const std::vector<int>& perm, int sign) {
        LaurentPoly q = p.permuted(perm);
        if (sign < 0) r -= q;
        else r += q;
    });
    return r;
}

inline bool is_symmetric(const LaurentPoly& p) {
    const auto& sig = p.signature();
    for (std::size_t v = 0; v < sig.num_colors(); ++v) {
        for (int a = 1; a < sig.counts()[v]; ++a) {
            std::vector<int> perm(static_cast<std::size_t>(sig.total()));
            std::iota(perm.begin(), perm.end(), 0);
            std::swap(perm[static_cast<std::size_t>(sig.var_index(static_cast<int>(v), a))],
                      perm[static_cast<std::size_t>(sig.var_index(static_cast<int>(v), a + 1))]);
            if (p.permuted(perm) != p) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Variable substitution with monomial scaling: z_var -> scale * z_target.
// Variables without a rule are left alone. Negative exponents invert the
// scale; a zero scale is a specialization pole.
// ---------------------------------------------------------------------------

struct VarRule {
    ParamScalar scale;
    int target;
};

inline LaurentPoly substitute_vars(const LaurentPoly& p, const std::map<int, VarRule>& rules) {
    for (const auto& [var, rule] : rules)
        if (rule.scale.is_zero())
            throw SpecializationPole("variable substituted with zero scale");
    LaurentPoly r = LaurentPoly::zero(p.ring(), p.signature());
    for (const auto& [e, c] : p.terms()) {
        Exponents f(e.size(), 0);
        ParamScalar coeff = c;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            auto it = rules.find(static_cast<int>(k));
            if (it == rules.end()) {
                f[k] += e[k];
            } else {
                coeff *= it->second.scale.pow(e[k]);
                f[static_cast<std::size_t>(it->second.target)] += e[k];
            }
        }
        r.add_term(f, coeff);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Exact division by (z_j - c z_i)^k. Synthetic division in z_j over the
// Laurent ring in the remaining variables; returns the quotient when the
// division is exact, nullopt otherwise.
// ---------------------------------------------------------------------------

inline std::optional<LaurentPoly> divide_linear_form(const LaurentPoly& p, int var_j,
                                                     const ParamScalar& c, int var_i) {
    if (var_i == var_j) throw Error("divide_linear_form: variables must differ");
    if (p.is_zero()) return p;

    // shift z_j exponents to be nonnegative
    int shift = 0;
    for (const auto& [e, s] : p.terms()) shift = std::min(shift, e[static_cast<std::size_t>(var_j)]);
    LaurentPoly q0 = p.var_shifted(var_j, -shift);

    // coefficients of z_j^d, highest degree first
    std::map<int, LaurentPoly> coeffs;
    int dmax = 0;
    for (const auto& [e, s] : q0.terms()) {
        int d = e[static_cast<std::size_t>(var_j)];
        dmax = std::max(dmax, d);
        auto it = coeffs.find(d);
        if (it == coeffs.end())
            it = coeffs.emplace(d, LaurentPoly::zero(p.ring(), p.signature())).first;
        Exponents f(e);
        f[static_cast<std::size_t>(var_j)] = 0;
        it->second.add_term(f, s);
    }

    // p0 = (z_j - c z_i) * q  =>  q_d = coeff_{d+1} + c z_i q_{d+1}
    LaurentPoly carry = LaurentPoly::zero(p.ring(), p.signature());
    LaurentPoly quotient = LaurentPoly::zero(p.ring(), p.signature());
    for (int d = dmax; d >= 1; --d) {
        auto it = coeffs.find(d);
        LaurentPoly qd = (it != coeffs.end()) ? it->second : LaurentPoly::zero(p.ring(), p.signature());
        qd += carry;
        quotient += qd.var_shifted(var_j, d - 1);
        carry = (qd * c).var_shifted(var_i, 1);
    }
    // exactness: the z_j^0 coefficient of the dividend must equal -c z_i q_0
    auto it0 = coeffs.find(0);
    LaurentPoly rem = (it0 != coeffs.end()) ? it0->second : LaurentPoly::zero(p.ring(), p.signature());
    if (rem != -carry) return std::nullopt;
    return quotient.var_shifted(var_j, shift);
}

// True iff (z_j - c z_i)^k divides p exactly; also yields the quotient.
inline std::pair<bool, LaurentPoly> divisible_by_power(const LaurentPoly& p, int var_j,
                                                       const ParamScalar& c, int var_i, int k) {
    if (k < 0) throw Error("divisible_by_power: negative power");
    LaurentPoly q = p;
    for (int round = 0; round < k; ++round) {
        auto next = divide_linear_form(q, var_j, c, var_i);
        if (!next) return {false, LaurentPoly::zero(p.ring(), p.signature())};
        q = std::move(*next);
    }
    return {true, q};
}

// ---------------------------------------------------------------------------
// SymLaurent: a per-color symmetric, vdeg-homogeneous Laurent polynomial.
// ---------------------------------------------------------------------------

struct SymLaurent {
    LaurentPoly poly;
    int vdeg = 0;

    bool is_zero() const { return poly.is_zero(); }
    bool operator==(const SymLaurent& o) const { return vdeg == o.vdeg && poly == o.poly; }
    bool operator!=(const SymLaurent& o) const { return !(*this == o); }
};

// Wrap a polynomial after checking homogeneity (and optionally symmetry).
inline SymLaurent make_sym_laurent(LaurentPoly p, bool check_symmetry = true) {
    int vdeg = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        if (first) { vdeg = s; first = false; }
        else if (s != vdeg) throw Error("SymLaurent: polynomial is not homogeneous");
    }
    if (check_symmetry && !is_symmetric(p)) throw Error("SymLaurent: polynomial is not symmetric");
    return SymLaurent{std::move(p), vdeg};
}

// ---------------------------------------------------------------------------
// Text form. Header `sig: i:2 j:1` (vertex names from the caller), optional
// `vdeg:` line, then one term per line in exponent-vector order:
//   (num) / (den) * z[i,1]^2 * z[j,1]^-1
// ---------------------------------------------------------------------------

inline std::string signature_to_string(const ColorSignature& sig,
                                       const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "sig:";
    for (std::size_t v = 0; v < sig.num_colors(); ++v)
        out << " " << names.at(v) << ":" << sig.counts()[v];
    return out.str();
}

inline std::string to_string(const LaurentPoly& p, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << signature_to_string(p.signature(), names) << "\n";
    if (p.is_zero()) {
        out << "0\n";
        return out.str();
    }
    for (const auto& [e, c] : p.terms()) {
        out << to_string(c);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            auto [v, a] = p.signature().var_of(static_cast<int>(k));
            out << " * z[" << names.at(static_cast<std::size_t>(v)) << "," << a << "]^" << e[k];
        }
        out << "\n";
    }
    return out.str();
}

inline std::string to_string(const SymLaurent& s, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << signature_to_string(s.poly.signature(), names) << "\n";
    out << "vdeg: " << s.vdeg << "\n";
    std::string body = to_string(s.poly, names);
    out << body.substr(body.find('\n') + 1);
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

inline ColorSignature parse_signature_line(const std::string& line,
                                           const std::vector<std::string>& names, int lineno) {
    std::istringstream in(line);
    std::string tag;
    in >> tag;
    if (tag != "sig:") throw ParseError("expected 'sig:' header", lineno);
    std::vector<int> counts(names.size(), 0);
    std::string tok;
    while (in >> tok) {
        auto colon = tok.rfind(':');
        if (colon == std::string::npos) throw ParseError("bad signature token " + tok, lineno);
        std::string name = tok.substr(0, colon);
        int count = std::stoi(tok.substr(colon + 1));
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw UnknownVertex("unknown vertex " + name);
        counts[static_cast<std::size_t>(it - names.begin())] = count;
    }
    return ColorSignature(std::move(counts));
}

// `(num) / (den) * z[i,1]^2 * ...`
inline void parse_poly_term(const std::string& line, const RingPtr& ring,
                            const std::vector<std::string>& names, const ColorSignature& sig,
                            LaurentPoly& accum, int lineno) {
    auto skip_ws = [&](std::size_t& k) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    };
    std::size_t k = 0;
    skip_ws(k);
    if (k >= line.size()) return;
    auto read_paren = [&](std::size_t& at) {
        if (line[at] != '(') throw ParseError("expected '('", lineno);
        int depth = 0;
        std::size_t start = at;
        for (; at < line.size(); ++at) {
            if (line[at] == '(') ++depth;
            if (line[at] == ')') {
                if (--depth == 0) { ++at; return line.substr(start + 1, at - start - 2); }
            }
        }
        throw ParseError("unbalanced parentheses", lineno);
    };
    std::string num = read_paren(k);
    skip_ws(k);
    if (k >= line.size() || line[k] != '/') throw ParseError("expected '/'", lineno);
    ++k;
    skip_ws(k);
    std::string den = read_paren(k);
    ParamScalar coeff = parse_scalar(num, ring, lineno) / parse_scalar(den, ring, lineno);

    Exponents e(static_cast<std::size_t>(sig.total()), 0);
    skip_ws(k);
    while (k < line.size()) {
        if (line[k] != '*') throw ParseError("expected '*'", lineno);
        ++k;
        skip_ws(k);
        if (line.compare(k, 2, "z[") != 0) throw ParseError("expected z[...]", lineno);
        k += 2;
        auto comma = line.find(',', k);
        auto close = line.find(']', k);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw ParseError("malformed variable", lineno);
        std::string name = line.substr(k, comma - k);
        int slot = std::stoi(line.substr(comma + 1, close - comma - 1));
        k = close + 1;
        if (k >= line.size() || line[k] != '^') throw ParseError("expected '^'", lineno);
        ++k;
        std::size_t start = k;
        if (k < line.size() && line[k] == '-') ++k;
        while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
        int exp = std::stoi(line.substr(start, k - start));
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw UnknownVertex("unknown vertex " + name);
        e[static_cast<std::size_t>(sig.var_index(static_cast<int>(it - names.begin()), slot))] += exp;
        skip_ws(k);
    }
    accum.add_term(e, coeff);
}

} // namespace detail

inline LaurentPoly parse_laurent_poly(const std::string& text, const RingPtr& ring,
                                      const std::vector<std::string>& names) {
    auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError("empty polynomial text");
    ColorSignature sig = detail::parse_signature_line(lines[0], names, 1);
    LaurentPoly p = LaurentPoly::zero(ring, sig);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::string& line = lines[k];
        if (line.empty() || line == "0") continue;
        if (line.rfind("vdeg:", 0) == 0) continue;
        detail::parse_poly_term(line, ring, names, sig, p, static_cast<int>(k + 1));
    }
    return p;
}

inline SymLaurent parse_sym_laurent(const std::string& text, const RingPtr& ring,
                                    const std::vector<std::string>& names) {
    return make_sym_laurent(parse_laurent_poly(text, ring, names));
}

} // namespace quiverloop
