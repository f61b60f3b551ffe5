/*
 * scalars.hpp
 * -----------
 * Exact arithmetic in the coefficient field: reduced fractions of sparse
 * multivariate integer Laurent polynomials in a declared, ordered list of
 * parameter symbols (e.g. q, t1, t2 or a single s).
 *
 * ParamPoly terms are keyed by exponent vectors (entries may be negative)
 * under the fixed lexicographic order given by the symbol declaration
 * order. Fractions are kept in a canonical form: gcd(num, den) is a unit,
 * the denominator has minimum exponent 0 in every symbol, and its leading
 * coefficient (lex-largest monomial) is positive. Equality of canonical
 * forms is therefore structural, and the zero test is exact.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace quiverloop {

using Exponents = std::vector<int>;

class ParamRing {
public:
    explicit ParamRing(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t k = 0; k < names_.size(); ++k) {
            if (names_[k].empty()) throw Error("ParamRing: empty symbol name");
            for (std::size_t l = 0; l < k; ++l)
                if (names_[l] == names_[k])
                    throw Error("ParamRing: duplicate symbol " + names_[k]);
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t k) const { return names_.at(k); }

    int index_of(const std::string& name) const {
        for (std::size_t k = 0; k < names_.size(); ++k)
            if (names_[k] == name) return static_cast<int>(k);
        return -1;
    }

    bool operator==(const ParamRing& o) const { return names_ == o.names_; }
    bool operator!=(const ParamRing& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const ParamRing>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const ParamRing>(std::move(names));
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return;
    if (!a || !b || *a != *b) throw Error("operands belong to different parameter rings");
}

// ---------------------------------------------------------------------------
// ParamPoly: sparse integer Laurent polynomial in the ring's symbols.
// ---------------------------------------------------------------------------

class ParamPoly {
public:
    using TermMap = std::map<Exponents, mpz_class>;

    ParamPoly() = default;
    explicit ParamPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static ParamPoly zero(RingPtr ring) { return ParamPoly(std::move(ring)); }

    static ParamPoly constant(RingPtr ring, mpz_class c) {
        ParamPoly p(std::move(ring));
        if (c != 0) p.terms_.emplace(Exponents(p.ring_->size(), 0), std::move(c));
        return p;
    }

    static ParamPoly monomial(RingPtr ring, Exponents exps, mpz_class c) {
        ParamPoly p(std::move(ring));
        if (exps.size() != p.ring_->size()) throw Error("ParamPoly: exponent arity mismatch");
        if (c != 0) p.terms_.emplace(std::move(exps), std::move(c));
        return p;
    }

    static ParamPoly symbol(RingPtr ring, int index) {
        Exponents e(ring->size(), 0);
        e.at(static_cast<std::size_t>(index)) = 1;
        return monomial(std::move(ring), std::move(e), 1);
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool is_one() const {
        return terms_.size() == 1 && is_constant() && terms_.begin()->second == 1;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    ParamPoly operator-() const {
        ParamPoly r(ring_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        require_same_ring(ring_, o.ring_);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        require_same_ring(ring_, o.ring_);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        require_same_ring(a.ring_, b.ring_);
        ParamPoly r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly& operator*=(const mpz_class& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    void add_term(const Exponents& e, const mpz_class& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Multiply by the monomial with exponent vector `shift`.
    ParamPoly shifted(const Exponents& shift) const {
        ParamPoly r(ring_);
        for (const auto& [e, c] : terms_) {
            Exponents f(e);
            for (std::size_t k = 0; k < f.size(); ++k) f[k] += shift[k];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    // Per-symbol minimum exponent over all terms (0s for the zero poly).
    Exponents min_exponents() const {
        Exponents m(ring_ ? ring_->size() : 0, 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) { m = e; first = false; continue; }
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], e[k]);
        }
        return m;
    }

    // Lex-largest term; poly must be nonzero.
    const std::pair<const Exponents, mpz_class>& leading() const {
        if (terms_.empty()) throw Error("leading(): zero polynomial");
        return *terms_.rbegin();
    }

    // Gcd of all integer coefficients, positive; 0 for the zero poly.
    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    void divide_content(const mpz_class& g) {
        if (g == 0 || g == 1) return;
        for (auto& [e, c] : terms_) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            if (r != 0) throw InexactDivision("integer content division not exact");
            c = q;
        }
    }

    int degree_in(std::size_t var) const {
        int d = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) { d = e[var]; first = false; }
            else d = std::max(d, e[var]);
        }
        return d;
    }

    // Coefficient of var^k, as a poly with var-exponent 0.
    ParamPoly coefficient_of(std::size_t var, int k) const {
        ParamPoly r(ring_);
        for (const auto& [e, c] : terms_)
            if (e[var] == k) {
                Exponents f(e);
                f[var] = 0;
                r.terms_.emplace(std::move(f), c);
            }
        return r;
    }

    ParamPoly pow(unsigned k) const {
        ParamPoly r = constant(ring_, 1);
        ParamPoly base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

private:
    RingPtr ring_;
    TermMap terms_;
};

// Exact division of Laurent polynomials; returns nullopt when not divisible.
// Both operands are shifted to honest polynomials first; the monomial part of
// the quotient is recovered from the shifts.
inline std::optional<ParamPoly> try_exact_divide(const ParamPoly& a, const ParamPoly& d) {
    require_same_ring(a.ring(), d.ring());
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) return ParamPoly::zero(a.ring());

    const Exponents ma = a.min_exponents(), md = d.min_exponents();
    Exponents neg_ma(ma), neg_md(md), shift(ma);
    for (std::size_t k = 0; k < ma.size(); ++k) {
        neg_ma[k] = -ma[k];
        neg_md[k] = -md[k];
        shift[k] = ma[k] - md[k];
    }
    ParamPoly r = a.shifted(neg_ma);
    const ParamPoly den = d.shifted(neg_md);
    const auto& [ed, cd] = den.leading();

    ParamPoly q(a.ring());
    while (!r.is_zero()) {
        const auto& [er, cr] = r.leading();
        Exponents e(er);
        bool ok = true;
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] -= ed[k];
            if (e[k] < 0) ok = false;
        }
        if (!ok) return std::nullopt;
        mpz_class qc, rem;
        mpz_fdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), cr.get_mpz_t(), cd.get_mpz_t());
        if (rem != 0) return std::nullopt;
        ParamPoly t = ParamPoly::monomial(a.ring(), e, qc);
        q += t;
        r -= t * den;
    }
    return q.shifted(shift);
}

inline ParamPoly exact_divide(const ParamPoly& a, const ParamPoly& d) {
    auto q = try_exact_divide(a, d);
    if (!q) throw InexactDivision("polynomial division left a remainder");
    return *q;
}

namespace detail {

// Shift to minimum exponent 0 and make the lex-leading coefficient positive.
inline ParamPoly unit_normal(const ParamPoly& p) {
    if (p.is_zero()) return p;
    Exponents m = p.min_exponents();
    for (auto& x : m) x = -x;
    ParamPoly r = p.shifted(m);
    if (r.leading().second < 0) r = -r;
    return r;
}

inline ParamPoly poly_content_in(const ParamPoly& p, std::size_t var);

// --- modular projection filter -------------------------------------------
// Before running a pseudo-remainder sequence, project both polynomials to
// univariate images modulo a machine prime at random points. The projected
// gcd degree bounds the true gcd degree in that variable from above (as long
// as the leading coefficient survives the evaluation), so an all-zero degree
// profile certifies that the gcd is a constant. Coprime inputs, by far the
// common case in fraction arithmetic, never reach the PRS.

constexpr std::uint64_t kGcdPrime = 2305843009213693951ull; // 2^61 - 1

inline std::uint64_t mulmod_p(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kGcdPrime);
}

inline std::uint64_t powmod_p(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1ull) r = mulmod_p(r, a);
        a = mulmod_p(a, a);
        e >>= 1ull;
    }
    return r;
}

inline std::uint64_t pow_signed_mod_p(std::uint64_t a, int e) {
    if (e >= 0) return powmod_p(a, static_cast<std::uint64_t>(e));
    return powmod_p(powmod_p(a, kGcdPrime - 2), static_cast<std::uint64_t>(-e));
}

// Dense univariate image of p in `var` at the given evaluation point
// (values for every other symbol; nonzero mod p). Exponents of `var` are
// shifted so index 0 is the minimum exponent; gcd degrees are shift-free.
inline std::vector<std::uint64_t> eval_univariate_mod_p(const ParamPoly& p, std::size_t var,
                                                        const std::vector<std::uint64_t>& point) {
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (first) { lo = hi = e[var]; first = false; }
        lo = std::min(lo, e[var]);
        hi = std::max(hi, e[var]);
    }
    std::vector<std::uint64_t> img(static_cast<std::size_t>(hi - lo + 1), 0);
    for (const auto& [e, c] : p.terms()) {
        std::uint64_t v = mpz_fdiv_ui(c.get_mpz_t(), kGcdPrime);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (k == var || e[k] == 0) continue;
            v = mulmod_p(v, pow_signed_mod_p(point[k], e[k]));
        }
        std::size_t idx = static_cast<std::size_t>(e[var] - lo);
        img[idx] = (img[idx] + v) % kGcdPrime;
    }
    while (!img.empty() && img.back() == 0) img.pop_back();
    return img;
}

inline int univariate_gcd_degree_mod_p(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a); trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t inv = powmod_p(b.back(), kGcdPrime - 2);
        while (a.size() >= b.size()) {
            std::uint64_t f = mulmod_p(a.back(), inv);
            std::size_t off = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) {
                std::uint64_t sub = mulmod_p(f, b[k]);
                a[off + k] = (a[off + k] + kGcdPrime - sub) % kGcdPrime;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? -1 : static_cast<int>(a.size()) - 1;
}

// Degree profile of gcd(a, b) per variable, or nullopt when an evaluation was
// degenerate. A profile of all zeros certifies a constant gcd.
inline std::optional<std::vector<int>> projected_gcd_degrees(const ParamPoly& a, const ParamPoly& b) {
    const std::size_t n = a.ring()->size();
    std::uint64_t seed = 0x51a7d00dull;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<std::uint64_t> point(n);
        for (std::size_t k = 0; k < n; ++k) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            point[k] = 2 + (seed >> 16) % (kGcdPrime - 3);
        }
        std::vector<int> degs(n, 0);
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            int da = a.degree_in(v), db = b.degree_in(v);
            // min exponents are 0 here (callers normalize), so degree == span
            if (da == 0 || db == 0) { degs[v] = 0; continue; }
            auto ia = eval_univariate_mod_p(a, v, point);
            auto ib = eval_univariate_mod_p(b, v, point);
            // leading coefficient must survive the evaluation
            if (static_cast<int>(ia.size()) - 1 != da || static_cast<int>(ib.size()) - 1 != db) {
                ok = false;
                break;
            }
            int d = univariate_gcd_degree_mod_p(std::move(ia), std::move(ib));
            if (d < 0) { ok = false; break; }
            degs[v] = d;
        }
        if (ok) return degs;
    }
    return std::nullopt;
}

// gcd(monomial, poly): componentwise minimum exponents plus integer gcd of
// the monomial coefficient with the poly's content.
inline ParamPoly monomial_gcd(const ParamPoly& mono, const ParamPoly& p) {
    Exponents e = mono.leading().first;
    Exponents m = p.min_exponents();
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::min(e[k], m[k]);
    mpz_class c = mono.leading().second;
    if (c < 0) c = -c;
    mpz_class pc = p.content();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
    ParamPoly r = ParamPoly::monomial(mono.ring(), std::move(e), std::move(g));
    return unit_normal(r);
}

// Recursive multivariate gcd over Z: integer contents split off, then a
// primitive pseudo-remainder sequence in the first symbol of positive degree.
inline ParamPoly gcd(const ParamPoly& a0, const ParamPoly& b0) {
    if (a0.is_zero()) return unit_normal(b0);
    if (b0.is_zero()) return unit_normal(a0);
    if (a0.is_monomial()) return monomial_gcd(a0, b0);
    if (b0.is_monomial()) return monomial_gcd(b0, a0);

    ParamPoly a = unit_normal(a0), b = unit_normal(b0);
    if (a == b) {
        mpz_class c = a.content();
        a.divide_content(c);
        // keep a single copy of the shared integer content
        ParamPoly r = a;
        r *= c;
        return r;
    }

    mpz_class ca = a.content(), cb = b.content();
    mpz_class ic;
    mpz_gcd(ic.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a.divide_content(ca);
    b.divide_content(cb);

    const std::size_t nvars = a.ring()->size();
    std::size_t var = nvars;
    for (std::size_t v = 0; v < nvars; ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) { var = v; break; }

    if (var != nvars) {
        if (auto degs = projected_gcd_degrees(a, b)) {
            bool constant_gcd = true;
            int best = -1;
            for (std::size_t v = 0; v < nvars; ++v) {
                if ((*degs)[v] > 0) {
                    constant_gcd = false;
                    if (best < 0 || (*degs)[v] < (*degs)[static_cast<std::size_t>(best)])
                        best = static_cast<int>(v);
                }
            }
            if (constant_gcd) {
                ParamPoly g = ParamPoly::constant(a.ring(), ic);
                return unit_normal(g);
            }
            var = static_cast<std::size_t>(best);
        }
    }

    ParamPoly g(a.ring());
    if (var == nvars) {
        // both are +-1 after content removal
        g = ParamPoly::constant(a.ring(), 1);
    } else {
        ParamPoly conta = poly_content_in(a, var);
        ParamPoly contb = poly_content_in(b, var);
        ParamPoly ppa = exact_divide(a, conta);
        ParamPoly ppb = exact_divide(b, contb);
        ParamPoly contg = gcd(conta, contb);

        ParamPoly f = ppa, h = ppb;
        if (f.degree_in(var) < h.degree_in(var)) std::swap(f, h);
        while (true) {
            if (h.is_zero()) { g = f; break; }
            // pseudo-remainder of f by h in `var`
            ParamPoly r = f;
            const int dh = h.degree_in(var);
            const ParamPoly lch = h.coefficient_of(var, dh);
            while (!r.is_zero() && r.degree_in(var) >= dh) {
                const int dr = r.degree_in(var);
                const ParamPoly lcr = r.coefficient_of(var, dr);
                Exponents sh(nvars, 0);
                sh[var] = dr - dh;
                r = r * lch - h.shifted(sh) * lcr;
            }
            if (r.is_zero()) { g = h; break; }
            // primitive part for the next round
            mpz_class rc = r.content();
            r.divide_content(rc);
            ParamPoly rcont = poly_content_in(r, var);
            r = exact_divide(r, rcont);
            f = h;
            h = r;
        }
        if (g.degree_in(var) > 0) {
            mpz_class gc = g.content();
            g.divide_content(gc);
            ParamPoly gcont = poly_content_in(g, var);
            g = exact_divide(g, gcont);
        } else {
            g = ParamPoly::constant(a.ring(), 1);
        }
        g = g * contg;
    }
    g *= ic;
    return unit_normal(g);
}

// Gcd of the univariate-in-`var` coefficients.
inline ParamPoly poly_content_in(const ParamPoly& p, std::size_t var) {
    ParamPoly c(p.ring());
    const int lo = -p.degree_in(var); // unused bound; iterate actual exponents
    (void)lo;
    std::map<int, ParamPoly> coeffs;
    for (const auto& [e, v] : p.terms()) {
        Exponents f(e);
        int k = f[var];
        f[var] = 0;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) it = coeffs.emplace(k, ParamPoly(p.ring())).first;
        it->second.add_term(f, v);
    }
    bool first = true;
    for (const auto& [k, q] : coeffs) {
        if (first) { c = unit_normal(q); first = false; }
        else c = gcd(c, q);
        if (c.is_one()) break;
    }
    return c;
}

} // namespace detail

inline ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) { return detail::gcd(a, b); }

// ---------------------------------------------------------------------------
// ParamScalar: canonical reduced fraction num/den of ParamPoly.
// ---------------------------------------------------------------------------

class ParamScalar {
public:
    ParamScalar() = default;

    explicit ParamScalar(RingPtr ring)
        : num_(ParamPoly::zero(ring)), den_(ParamPoly::constant(ring, 1)) {}

    ParamScalar(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
        require_same_ring(num_.ring(), den_.ring());
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        reduce();
    }

    static ParamScalar zero(RingPtr ring) { return ParamScalar(std::move(ring)); }

    static ParamScalar integer(RingPtr ring, long v) {
        return from_poly(ParamPoly::constant(std::move(ring), mpz_class(v)));
    }

    static ParamScalar one(RingPtr ring) { return integer(std::move(ring), 1); }

    static ParamScalar from_poly(ParamPoly p) {
        RingPtr r = p.ring();
        ParamScalar s;
        s.num_ = std::move(p);
        s.den_ = ParamPoly::constant(r, 1);
        return s;
    }

    static ParamScalar symbol(RingPtr ring, const std::string& name) {
        int k = ring->index_of(name);
        if (k < 0) throw UnknownSymbol("unknown symbol " + name);
        return from_poly(ParamPoly::symbol(std::move(ring), k));
    }

    static ParamScalar monomial(RingPtr ring, Exponents exps, long c = 1) {
        return from_poly(ParamPoly::monomial(std::move(ring), std::move(exps), mpz_class(c)));
    }

    const RingPtr& ring() const { return num_.ring(); }
    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    bool operator==(const ParamScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    ParamScalar operator-() const {
        ParamScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // The arithmetic below keeps fractions reduced with the classical
    // cross-gcd scheme: operands are canonical (num coprime to den), so the
    // few small gcds taken here are enough and no full reduction of the
    // result is ever required.
    friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
        require_same_ring(a.ring(), b.ring());
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_.is_one() && b.den_.is_one())
            return from_poly(a.num_ + b.num_);
        ParamScalar r;
        if (a.den_ == b.den_) {
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
            ParamPoly g = poly_gcd(r.num_, r.den_);
            if (!g.is_one()) {
                r.num_ = exact_divide(r.num_, g);
                r.den_ = exact_divide(r.den_, g);
            }
        } else {
            ParamPoly g = poly_gcd(a.den_, b.den_);
            if (g.is_one()) {
                r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
                r.den_ = a.den_ * b.den_;
            } else {
                ParamPoly ea = exact_divide(a.den_, g);
                ParamPoly eb = exact_divide(b.den_, g);
                r.num_ = a.num_ * eb + b.num_ * ea;
                ParamPoly h = poly_gcd(r.num_, g);
                if (!h.is_one()) {
                    r.num_ = exact_divide(r.num_, h);
                    g = exact_divide(g, h);
                }
                r.den_ = g * ea * eb;
            }
        }
        r.normalize_units();
        return r;
    }
    friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) { return a + (-b); }

    friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
        require_same_ring(a.ring(), b.ring());
        if (a.is_zero() || b.is_zero()) return zero(a.ring());
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        ParamScalar r;
        if (a.den_.is_one() && b.den_.is_one()) {
            r.num_ = a.num_ * b.num_;
            r.den_ = a.den_;
            return r;
        }
        ParamPoly na = a.num_, db = b.den_;
        ParamPoly g1 = poly_gcd(na, db);
        if (!g1.is_one()) {
            na = exact_divide(na, g1);
            db = exact_divide(db, g1);
        }
        ParamPoly nb = b.num_, da = a.den_;
        ParamPoly g2 = poly_gcd(nb, da);
        if (!g2.is_one()) {
            nb = exact_divide(nb, g2);
            da = exact_divide(da, g2);
        }
        r.num_ = na * nb;
        r.den_ = da * db;
        r.normalize_units();
        return r;
    }

    friend ParamScalar operator/(const ParamScalar& a, const ParamScalar& b) {
        require_same_ring(a.ring(), b.ring());
        if (b.is_zero()) throw DivisionByZero("scalar division by zero");
        return a * b.inverse();
    }

    ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
    ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
    ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
    ParamScalar& operator/=(const ParamScalar& o) { return *this = *this / o; }

    ParamScalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        ParamScalar r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_units();
        return r;
    }

    ParamScalar pow(long k) const {
        if (k == 0) return one(ring());
        ParamScalar base = k > 0 ? *this : inverse();
        unsigned long n = static_cast<unsigned long>(k > 0 ? k : -k);
        ParamScalar r = one(ring());
        while (n) {
            if (n & 1ul) r *= base;
            base *= base;
            n >>= 1ul;
        }
        return r;
    }

    // Ring-homomorphic image under symbol -> value (over the target ring).
    ParamScalar substitute(const std::vector<ParamScalar>& values, RingPtr target) const {
        if (values.size() != ring()->size())
            throw Error("substitute: one value per ring symbol required");
        ParamScalar n = eval_poly(num_, values, target);
        ParamScalar d = eval_poly(den_, values, target);
        if (d.is_zero()) throw SpecializationPole("denominator vanishes under specialization");
        return n / d;
    }

private:
    static ParamScalar eval_poly(const ParamPoly& p, const std::vector<ParamScalar>& values,
                                 const RingPtr& target) {
        ParamScalar acc = zero(target);
        for (const auto& [e, c] : p.terms()) {
            ParamScalar term = from_poly(ParamPoly::constant(target, c));
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (values[k].is_zero())
                    throw SpecializationPole("negative power of a vanishing parameter");
                term *= values[k].pow(e[k]);
            }
            acc += term;
        }
        return acc;
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = ParamPoly::constant(num_.ring(), 1);
            return;
        }
        if (!den_.is_one()) {
            ParamPoly g = poly_gcd(num_, den_);
            if (!g.is_one()) {
                num_ = exact_divide(num_, g);
                den_ = exact_divide(den_, g);
            }
        }
        normalize_units();
    }

    // Unit normalization only (no gcd): the denominator's monomial factor
    // moves into the numerator, min exponents of den become 0, leading
    // denominator coefficient positive.
    void normalize_units() {
        if (num_.is_zero()) {
            den_ = ParamPoly::constant(num_.ring(), 1);
            return;
        }
        Exponents m = den_.min_exponents();
        bool shift = false;
        for (int x : m)
            if (x != 0) { shift = true; break; }
        if (shift) {
            Exponents neg(m);
            for (auto& x : neg) x = -x;
            den_ = den_.shifted(neg);
            num_ = num_.shifted(neg);
        }
        if (den_.leading().second < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    ParamPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Text form. Canonical printing: terms in descending lex order, each as
// `c*q^1*t1^-1`, a bare integer for constant monomials; the whole scalar as
// `(num) / (den)`. The parser accepts general +,-,*,/,^ expressions over the
// ring symbols, a superset of the canonical form.
// ---------------------------------------------------------------------------

inline std::string to_string(const ParamPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) out << " + ";
        first = false;
        bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        out << c.get_str();
        if (!constant) {
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) out << "*" << p.ring()->name(k) << "^" << e[k];
        }
    }
    return out.str();
}

inline std::string to_string(const ParamScalar& s) {
    return "(" + to_string(s.num()) + ") / (" + to_string(s.den()) + ")";
}

namespace detail {

class ExprParser {
public:
    ExprParser(std::string text, RingPtr ring, int line)
        : text_(std::move(text)), ring_(std::move(ring)), line_(line) {}

    ParamScalar parse() {
        ParamScalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters in expression");
        return v;
    }

private:
    ParamScalar expr() {
        ParamScalar v = term();
        while (true) {
            skip_ws();
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }

    ParamScalar term() {
        ParamScalar v = factor();
        while (true) {
            skip_ws();
            if (accept('*')) v *= factor();
            else if (accept('/')) {
                ParamScalar d = factor();
                if (d.is_zero()) throw DivisionByZero("division by zero in expression");
                v /= d;
            } else return v;
        }
    }

    ParamScalar factor() {
        skip_ws();
        bool neg = false;
        while (accept('-')) neg = !neg;
        ParamScalar v = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool eneg = accept('-');
            long e = read_integer();
            v = v.pow(eneg ? -e : e);
        }
        return neg ? -v : v;
    }

    ParamScalar atom() {
        skip_ws();
        if (accept('(')) {
            ParamScalar v = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            mpz_class c(text_.substr(start, pos_ - start));
            return ParamScalar::from_poly(ParamPoly::constant(ring_, c));
        }
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            int k = ring_->index_of(name);
            if (k < 0) fail("unknown symbol " + name);
            return ParamScalar::from_poly(ParamPoly::symbol(ring_, k));
        }
        fail("expected number, symbol or '('");
        return ParamScalar::zero(ring_); // unreachable
    }

    long read_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_); }

    std::string text_;
    RingPtr ring_;
    int line_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ParamScalar parse_scalar(const std::string& text, const RingPtr& ring, int line = 0) {
    return detail::ExprParser(text, ring, line).parse();
}

} // namespace quiverloop
