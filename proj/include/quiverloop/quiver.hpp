/*
 * quiver.hpp
 * ----------
 * Quiver data (ordered vertices, edge multiset, parameter assignment), the
 * doubled edge set with t_{e*} = q/t_e, and the zeta kernels
 *
 *   zeta_{ij}(x) = ((1-x/q)/(1-x))^{delta_ij}
 *                  prod_{e: i->j} (1/t_e - x) prod_{e: j->i} (1 - t_e/(q x))
 *
 * stored through their pole-free numerators ztilde_{ij} = zeta_{ij} (1-x)^d.
 * Reciprocal expansions 1/zeta_{ij}(u) = u^{#(j->i arrows reversed)} (...)
 * around u = 0 are memoized per (i,j) and extended monotonically; they are
 * the workhorse of every pairing computation.
 */
#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalars.hpp"

namespace quiverloop {

// Univariate Laurent polynomial over the scalar field, sparse in the
// exponent; enough structure for the zeta kernels.
class UniLaurent {
public:
    UniLaurent() = default;
    explicit UniLaurent(RingPtr ring) : ring_(std::move(ring)) {}

    static UniLaurent constant(RingPtr ring, const ParamScalar& c) {
        UniLaurent u(std::move(ring));
        if (!c.is_zero()) u.terms_.emplace(0, c);
        return u;
    }

    static UniLaurent term(RingPtr ring, int exp, const ParamScalar& c) {
        UniLaurent u(std::move(ring));
        if (!c.is_zero()) u.terms_.emplace(exp, c);
        return u;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<int, ParamScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int exp, const ParamScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    ParamScalar coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? ParamScalar::zero(ring_) : it->second;
    }

    friend UniLaurent operator*(const UniLaurent& a, const UniLaurent& b) {
        require_same_ring(a.ring_, b.ring_);
        UniLaurent r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend UniLaurent operator+(UniLaurent a, const UniLaurent& b) {
        require_same_ring(a.ring_, b.ring_);
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }

    bool operator==(const UniLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const UniLaurent& o) const { return !(*this == o); }

private:
    RingPtr ring_;
    std::map<int, ParamScalar> terms_;
};

// Truncated power series: coeff[k] multiplies u^{lead+k}.
struct PowerSeries {
    int lead = 0;
    std::vector<ParamScalar> coeff;

    int top_order() const { return lead + static_cast<int>(coeff.size()) - 1; }
    ParamScalar at(int exp, const RingPtr& ring) const {
        int k = exp - lead;
        if (k < 0 || k >= static_cast<int>(coeff.size())) return ParamScalar::zero(ring);
        return coeff[static_cast<std::size_t>(k)];
    }
};

struct QuiverEdge {
    int src = 0, dst = 0;
};

// An element of the doubled edge set: the base edge or its reversal, with
// the parameter t (t_{e*} = q/t_e).
struct DoubledEdge {
    int src = 0, dst = 0;
    ParamScalar t;
    int base = 0;
    bool star = false;
};

struct ZetaKernel {
    int i = 0, j = 0;
    UniLaurent num;       // ztilde_{ij}(x) = zeta_{ij}(x) (1-x)^{delta}
    bool den_pole = false; // the (1-x) factor, present iff i == j

    const UniLaurent& tilde_numerator() const { return num; }
};

class Quiver {
public:
    Quiver(RingPtr ring, std::vector<std::string> vertices, std::vector<QuiverEdge> edges,
           ParamScalar q, std::vector<ParamScalar> t, std::string assumption = {})
        : ring_(std::move(ring)),
          vertices_(std::move(vertices)),
          edges_(std::move(edges)),
          q_(std::move(q)),
          t_(std::move(t)),
          assumption_(std::move(assumption)) {
        if (vertices_.empty()) throw Error("quiver needs at least one vertex");
        for (std::size_t a = 0; a < vertices_.size(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (vertices_[a] == vertices_[b]) throw Error("duplicate vertex name");
        if (t_.size() != edges_.size()) throw Error("one t parameter per edge required");
        if (q_.is_zero()) throw Error("q must be nonzero");
        const int n = static_cast<int>(vertices_.size());
        for (const auto& e : edges_)
            if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
                throw UnknownVertex("edge endpoint out of range");
        for (const auto& tv : t_)
            if (tv.is_zero()) throw Error("edge parameters must be nonzero");
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            doubled_.push_back({edges_[k].src, edges_[k].dst, t_[k], static_cast<int>(k), false});
        }
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            doubled_.push_back(
                {edges_[k].dst, edges_[k].src, q_ / t_[k], static_cast<int>(k), true});
        }
    }

    const RingPtr& ring() const { return ring_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }

    int vertex_index(const std::string& name) const {
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (vertices_[v] == name) return static_cast<int>(v);
        throw UnknownVertex("unknown vertex " + name);
    }

    const std::vector<QuiverEdge>& edges() const { return edges_; }
    const std::vector<DoubledEdge>& doubled_edges() const { return doubled_; }
    const ParamScalar& q() const { return q_; }
    const ParamScalar& t(std::size_t edge) const { return t_.at(edge); }
    const std::string& assumption() const { return assumption_; }

    // #_{i->j}: arrows from i to j in E.
    int arrows(int i, int j) const {
        int n = 0;
        for (const auto& e : edges_)
            if (e.src == i && e.dst == j) ++n;
        return n;
    }

    // #_{ij} = #_{i->j} + #_{j->i}.
    int edge_count(int i, int j) const { return arrows(i, j) + arrows(j, i); }

    int max_edge_count() const {
        int m = 0;
        for (int i = 0; i < vertex_count(); ++i)
            for (int j = i; j < vertex_count(); ++j) m = std::max(m, edge_count(i, j));
        return m;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count()) throw UnknownVertex("vertex index out of range");
    }

    // ztilde_{ij}(x), a Laurent polynomial with lowest exponent -#_{j->i}.
    const UniLaurent& zeta_tilde(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        auto key = std::make_pair(i, j);
        auto it = zeta_cache_.find(key);
        if (it != zeta_cache_.end()) return it->second;

        UniLaurent z = UniLaurent::constant(ring_, ParamScalar::one(ring_));
        if (i == j) {
            // (1 - x/q)
            UniLaurent f = UniLaurent::constant(ring_, ParamScalar::one(ring_));
            f.add_term(1, -q_.inverse());
            z = z * f;
        }
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            if (edges_[k].src == i && edges_[k].dst == j) {
                // (1/t_e - x)
                UniLaurent f = UniLaurent::constant(ring_, t_[k].inverse());
                f.add_term(1, -ParamScalar::one(ring_));
                z = z * f;
            }
            if (edges_[k].src == j && edges_[k].dst == i) {
                // (1 - t_e/(q x))
                UniLaurent f = UniLaurent::constant(ring_, ParamScalar::one(ring_));
                f.add_term(-1, -(t_[k] / q_));
                z = z * f;
            }
        }
        return zeta_cache_.emplace(key, std::move(z)).first->second;
    }

    ZetaKernel zeta(int i, int j) const {
        return ZetaKernel{i, j, zeta_tilde(i, j), i == j};
    }

    // Expansion of 1/zeta_{ij}(u) around u = 0, with exact coefficients for
    // all exponents <= order. The leading exponent is #_{j->i}.
    PowerSeries recip_zeta_series(int i, int j, int order) const {
        if (order < 0) order = 0;
        auto key = std::make_pair(i, j);
        auto it = recip_cache_.find(key);
        if (it != recip_cache_.end() && it->second.top_order() >= order) {
            PowerSeries s = it->second;
            s.coeff.resize(static_cast<std::size_t>(order - s.lead + 1 > 0 ? order - s.lead + 1 : 0),
                           ParamScalar::zero(ring_));
            return s;
        }

        const UniLaurent& zt = zeta_tilde(i, j);
        const int shift = arrows(j, i); // lowest exponent of ztilde is -shift
        if (zt.min_exp() != -shift)
            throw Error("internal: zeta_tilde leading exponent mismatch");

        // N(u) = ztilde(u) u^{shift} is a polynomial with N(0) invertible.
        const int want = order - shift + 1; // number of series coefficients
        const int len = std::max(want, 1) + 2;
        std::vector<ParamScalar> n_coeff(static_cast<std::size_t>(len), ParamScalar::zero(ring_));
        for (const auto& [e, c] : zt.terms()) {
            int k = e + shift;
            if (k < len) n_coeff[static_cast<std::size_t>(k)] = c;
        }
        // series inverse of N
        std::vector<ParamScalar> inv(static_cast<std::size_t>(len), ParamScalar::zero(ring_));
        ParamScalar c0 = n_coeff[0];
        if (c0.is_zero()) throw Error("internal: zeta numerator has zero constant term");
        ParamScalar c0inv = c0.inverse();
        inv[0] = c0inv;
        for (int k = 1; k < len; ++k) {
            ParamScalar acc = ParamScalar::zero(ring_);
            for (int l = 1; l <= k; ++l)
                acc += n_coeff[static_cast<std::size_t>(l)] * inv[static_cast<std::size_t>(k - l)];
            inv[static_cast<std::size_t>(k)] = -(acc * c0inv);
        }
        // 1/zeta = u^{shift} (1-u)^{delta} / N(u)
        if (i == j) {
            for (int k = len - 1; k >= 1; --k)
                inv[static_cast<std::size_t>(k)] -= inv[static_cast<std::size_t>(k - 1)];
        }
        PowerSeries s;
        s.lead = shift;
        s.coeff.assign(inv.begin(), inv.end());
        auto cached = recip_cache_.find(key);
        if (cached == recip_cache_.end() || cached->second.top_order() < s.top_order())
            recip_cache_[key] = s;
        s.coeff.resize(static_cast<std::size_t>(std::max(order - shift + 1, 0)),
                       ParamScalar::zero(ring_));
        return s;
    }

    // flat_{ij}(gamma): number of doubled edges i->j whose parameter equals
    // gamma, by exact scalar equality in the declared ring.
    int flat_multiplicity(int i, int j, const ParamScalar& gamma) const {
        int n = 0;
        for (const auto& e : doubled_)
            if (e.src == i && e.dst == j && e.t == gamma) ++n;
        return n;
    }

    // Distinct parameter values among doubled edges i->j (declaration order).
    std::vector<ParamScalar> distinct_edge_parameters(int i, int j) const {
        std::vector<ParamScalar> out;
        for (const auto& e : doubled_) {
            if (e.src != i || e.dst != j) continue;
            bool seen = false;
            for (const auto& g : out)
                if (g == e.t) { seen = true; break; }
            if (!seen) out.push_back(e.t);
        }
        return out;
    }

private:
    RingPtr ring_;
    std::vector<std::string> vertices_;
    std::vector<QuiverEdge> edges_;
    ParamScalar q_;
    std::vector<ParamScalar> t_;
    std::string assumption_;
    std::vector<DoubledEdge> doubled_;

    mutable std::map<std::pair<int, int>, UniLaurent> zeta_cache_;
    mutable std::map<std::pair<int, int>, PowerSeries> recip_cache_;
};

// ---------------------------------------------------------------------------
// Config file: ordered `vertices:` list, `edges:` list of [src,dst],
// `ring:` symbol list, `q:` and `t[k]:` expressions, optional `assumption:`
// free-text assertion. '#' starts a comment.
// ---------------------------------------------------------------------------

inline Quiver parse_quiver_config(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edge_names;
    std::vector<std::string> ring_names;
    std::string q_expr;
    std::map<int, std::pair<std::string, int>> t_exprs; // k -> (expr, line)
    std::string assumption;
    int q_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "vertices:") {
            std::string v;
            while (ls >> v) vertices.push_back(v);
            if (vertices.empty()) throw ParseError("empty vertex list", lineno);
        } else if (key == "edges:") {
            std::string tok;
            while (ls >> tok) {
                if (tok.size() < 5 || tok.front() != '[' || tok.back() != ']')
                    throw ParseError("edge token must look like [src,dst]: " + tok, lineno);
                auto comma = tok.find(',');
                if (comma == std::string::npos)
                    throw ParseError("edge token missing comma: " + tok, lineno);
                edge_names.emplace_back(tok.substr(1, comma - 1),
                                        tok.substr(comma + 1, tok.size() - comma - 2));
            }
        } else if (key == "ring:") {
            std::string s;
            while (ls >> s) ring_names.push_back(s);
            if (ring_names.empty()) throw ParseError("empty ring symbol list", lineno);
        } else if (key == "q:") {
            std::getline(ls, q_expr);
            q_line = lineno;
        } else if (key.rfind("t[", 0) == 0 && key.back() == ':') {
            auto close = key.find(']');
            if (close == std::string::npos) throw ParseError("malformed t[k]: key", lineno);
            int k = std::stoi(key.substr(2, close - 2));
            std::string expr;
            std::getline(ls, expr);
            t_exprs[k] = {expr, lineno};
        } else if (key == "assumption:") {
            std::getline(ls, assumption);
            while (!assumption.empty() && std::isspace(static_cast<unsigned char>(assumption.front())))
                assumption.erase(assumption.begin());
        } else {
            throw ParseError("unknown config key " + key, lineno);
        }
    }

    if (vertices.empty()) throw ParseError("missing vertices:", lineno);
    if (ring_names.empty()) throw ParseError("missing ring:", lineno);
    if (q_expr.empty()) throw ParseError("missing q:", lineno);

    RingPtr ring = make_ring(ring_names);
    auto index_of = [&](const std::string& name, int at) {
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (vertices[v] == name) return static_cast<int>(v);
        throw ParseError("unknown vertex in edge: " + name, at);
    };

    std::vector<QuiverEdge> edges;
    for (const auto& [s, d] : edge_names)
        edges.push_back({index_of(s, 0), index_of(d, 0)});

    ParamScalar q = parse_scalar(q_expr, ring, q_line);
    std::vector<ParamScalar> t;
    for (std::size_t k = 1; k <= edges.size(); ++k) {
        auto it = t_exprs.find(static_cast<int>(k));
        if (it == t_exprs.end())
            throw ParseError("missing t[" + std::to_string(k) + "]:");
        t.push_back(parse_scalar(it->second.first, ring, it->second.second));
    }
    return Quiver(ring, vertices, edges, q, t, assumption);
}

} // namespace quiverloop
