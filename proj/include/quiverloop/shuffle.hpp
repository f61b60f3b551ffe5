/*
 * shuffle.hpp
 * -----------
 * The big shuffle algebra product and the wheel-condition membership tests
 * for the small subalgebra.
 *
 * The product is computed in cleared-denominator form. The (1-x) poles of
 * the same-color kernels sit at z_{ia} = z_{ib} for slot pairs straddling
 * the R/R' split; writing their product as a signed Vandermonde quotient
 * turns Sym[numerator / poles] into Alt[numerator'] / Vandermonde, and the
 * final division is exact because alternating Laurent polynomials are
 * divisible by the full difference product. A failed division would mean a
 * bug, reported as InexactDivision.
 */
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomials.hpp"
#include "quiver.hpp"

namespace quiverloop {

using ShuffleElement = SymLaurent;

// The function 1 in zero variables.
inline ShuffleElement shuffle_unit(const Quiver& quiver) {
    ColorSignature sig(std::vector<int>(static_cast<std::size_t>(quiver.vertex_count()), 0));
    return SymLaurent{LaurentPoly::constant(quiver.ring(), sig, ParamScalar::one(quiver.ring())), 0};
}

// z_{i1}^d, the image of a single generator.
inline ShuffleElement one_variable_element(const Quiver& quiver, int vertex, int d) {
    quiver.check_vertex(vertex);
    ColorSignature sig = ColorSignature::unit(static_cast<std::size_t>(quiver.vertex_count()), vertex);
    Exponents e(1, d);
    return SymLaurent{LaurentPoly::monomial(quiver.ring(), sig, std::move(e),
                                            ParamScalar::one(quiver.ring())),
                      d};
}

inline ShuffleElement shuffle_mul(const Quiver& quiver, const ShuffleElement& R,
                                  const ShuffleElement& Rp, int max_slots = 8) {
    const auto& ring = quiver.ring();
    const int V = quiver.vertex_count();
    const ColorSignature& nsig = R.poly.signature();
    const ColorSignature& psig = Rp.poly.signature();
    if (static_cast<int>(nsig.num_colors()) != V || static_cast<int>(psig.num_colors()) != V)
        throw SignatureMismatch("shuffle factors over a different vertex set");
    ColorSignature msig = nsig + psig;
    if (msig.total() > max_slots)
        throw SignatureOverflow("shuffle product exceeds the slot cap of " +
                                std::to_string(max_slots));
    if (R.poly.is_zero() || Rp.poly.is_zero())
        return SymLaurent{LaurentPoly::zero(ring, msig), R.vdeg + Rp.vdeg};

    // R in the low slots, R' in the high slots
    std::vector<int> no_shift(static_cast<std::size_t>(V), 0);
    std::vector<int> up_shift(nsig.counts());
    LaurentPoly P = R.poly.embedded(msig, no_shift) * Rp.poly.embedded(msig, up_shift);

    // kernel numerators ztilde_{ij}(z_{ia}/z_{jb}) over all straddling pairs
    for (int i = 0; i < V; ++i) {
        for (int j = 0; j < V; ++j) {
            const UniLaurent& zt = quiver.zeta_tilde(i, j);
            for (int a = 1; a <= nsig.count(i); ++a) {
                for (int b = nsig.count(j) + 1; b <= msig.count(j); ++b) {
                    LaurentPoly factor = LaurentPoly::zero(ring, msig);
                    const int va = msig.var_index(i, a);
                    const int vb = msig.var_index(j, b);
                    for (const auto& [k, c] : zt.terms()) {
                        Exponents e(static_cast<std::size_t>(msig.total()), 0);
                        e[static_cast<std::size_t>(va)] += k;
                        e[static_cast<std::size_t>(vb)] -= k;
                        factor.add_term(e, c);
                    }
                    P *= factor;
                }
            }
        }
    }

    // clear the same-color poles: multiply by
    //   (-1)^{n_i n_i'} prod_{b > n_i} z_{ib}^{n_i} prod_{intra a<b} (z_{ia} - z_{ib})
    // and later divide the signed shuffle sum by the full difference product.
    long sign = 1;
    for (int i = 0; i < V; ++i) {
        const int ni = nsig.count(i), mi = msig.count(i);
        if ((static_cast<long>(ni) * (mi - ni)) % 2 != 0) sign = -sign;
        for (int b = ni + 1; b <= mi; ++b)
            P = P.var_shifted(msig.var_index(i, b), ni);
        auto intra = [&](int lo, int hi) {
            for (int a = lo; a <= hi; ++a)
                for (int b = a + 1; b <= hi; ++b) {
                    LaurentPoly diff = LaurentPoly::zero(ring, msig);
                    Exponents ea(static_cast<std::size_t>(msig.total()), 0);
                    ea[static_cast<std::size_t>(msig.var_index(i, a))] = 1;
                    diff.add_term(ea, ParamScalar::one(ring));
                    Exponents eb(static_cast<std::size_t>(msig.total()), 0);
                    eb[static_cast<std::size_t>(msig.var_index(i, b))] = 1;
                    diff.add_term(eb, -ParamScalar::one(ring));
                    P *= diff;
                }
        };
        intra(1, ni);
        intra(ni + 1, mi);
    }
    if (sign < 0) P = -P;

    // P is antisymmetric within the lower and upper block of each color, so
    // the full alternating sum is (prod n_i! n_i'!) times the sum over
    // order-preserving shuffles of the two blocks; that factorial cancels
    // the symmetrization prefactor exactly.
    std::vector<std::vector<std::vector<int>>> color_choices;
    for (int i = 0; i < V; ++i) {
        const int ni = nsig.count(i), mi = msig.count(i);
        std::vector<std::vector<int>> choices;
        std::vector<int> pick;
        std::function<void(int)> choose = [&](int from) {
            if (static_cast<int>(pick.size()) == ni) {
                choices.push_back(pick);
                return;
            }
            for (int p = from; p <= mi - (ni - static_cast<int>(pick.size())) + 1; ++p) {
                pick.push_back(p);
                choose(p + 1);
                pick.pop_back();
            }
        };
        choose(1);
        color_choices.push_back(std::move(choices));
    }

    LaurentPoly alt = LaurentPoly::zero(ring, msig);
    std::vector<std::size_t> which(static_cast<std::size_t>(V), 0);
    for (;;) {
        // flat permutation: lower-block slot a goes to position pick[a],
        // upper-block slots fill the complement in order
        std::vector<int> perm(static_cast<std::size_t>(msig.total()));
        int parity = 0;
        for (int i = 0; i < V; ++i) {
            const int ni = nsig.count(i), mi = msig.count(i);
            const auto& pick = color_choices[static_cast<std::size_t>(i)][which[static_cast<std::size_t>(i)]];
            std::vector<bool> taken(static_cast<std::size_t>(mi + 1), false);
            std::vector<int> dest(static_cast<std::size_t>(mi + 1), 0);
            for (int a = 1; a <= ni; ++a) {
                dest[static_cast<std::size_t>(a)] = pick[static_cast<std::size_t>(a - 1)];
                taken[static_cast<std::size_t>(pick[static_cast<std::size_t>(a - 1)])] = true;
            }
            int next = 1;
            for (int b = ni + 1; b <= mi; ++b) {
                while (taken[static_cast<std::size_t>(next)]) ++next;
                dest[static_cast<std::size_t>(b)] = next;
                taken[static_cast<std::size_t>(next)] = true;
            }
            for (int a = 1; a <= mi; ++a)
                for (int b = a + 1; b <= mi; ++b)
                    if (dest[static_cast<std::size_t>(a)] > dest[static_cast<std::size_t>(b)]) ++parity;
            // permuted(): result exponent at var k read from var perm[k]
            for (int a = 1; a <= mi; ++a)
                perm[static_cast<std::size_t>(msig.var_index(i, dest[static_cast<std::size_t>(a)]))] =
                    msig.var_index(i, a);
        }
        LaurentPoly piece = P.permuted(perm);
        if (parity % 2) alt -= piece;
        else alt += piece;

        int carry = V - 1;
        while (carry >= 0) {
            which[static_cast<std::size_t>(carry)]++;
            if (which[static_cast<std::size_t>(carry)] <
                color_choices[static_cast<std::size_t>(carry)].size())
                break;
            which[static_cast<std::size_t>(carry)] = 0;
            --carry;
        }
        if (carry < 0) break;
    }

    // exact division by the per-color Vandermonde
    for (int i = 0; i < V; ++i) {
        for (int a = 1; a <= msig.count(i); ++a) {
            for (int b = a + 1; b <= msig.count(i); ++b) {
                if (alt.is_zero()) break;
                auto quot = divide_linear_form(alt, msig.var_index(i, a),
                                               ParamScalar::one(ring), msig.var_index(i, b));
                if (!quot)
                    throw InexactDivision("symmetrization denominator failed to cancel");
                alt = std::move(*quot);
            }
        }
    }

    return SymLaurent{std::move(alt), R.vdeg + Rp.vdeg};
}

// ---------------------------------------------------------------------------
// Wheel conditions.
// ---------------------------------------------------------------------------

enum class WheelMode { generic, specialized };

struct WheelCheckResult {
    bool pass = true;
    std::string witness; // violating edge/slots and the residual, when failing

    explicit operator bool() const { return pass; }
};

// Generic mode: R vanishes under z_{ia} = q z_{ic}, z_{jb} = t_e z_{ic} for
// every doubled edge e: i->j and all admissible slot triples. Specialized
// mode: for every vertex i, R|_{z_{i2}=q z_{i1}} is divisible by
// (z_{jb} - gamma z_{i1})^{flat_{ij}(gamma)} for every slot (j,b) outside
// {(i,1),(i,2)} and every distinct parameter gamma of the doubled edges
// i->j.
inline WheelCheckResult wheel_check(const Quiver& quiver, const ShuffleElement& R,
                                    WheelMode mode = WheelMode::generic) {
    const ColorSignature& sig = R.poly.signature();
    const auto& names = quiver.vertex_names();

    if (mode == WheelMode::generic) {
        for (const auto& e : quiver.doubled_edges()) {
            const int i = e.src, j = e.dst;
            if (sig.count(i) < (i == j ? 3 : 2)) continue;
            if (sig.count(j) < 1) continue;
            for (int a = 1; a <= sig.count(i); ++a) {
                for (int c = 1; c <= sig.count(i); ++c) {
                    if (a == c) continue;
                    for (int b = 1; b <= sig.count(j); ++b) {
                        if (i == j && (b == a || b == c)) continue;
                        std::map<int, VarRule> rules;
                        rules[sig.var_index(i, a)] = VarRule{quiver.q(), sig.var_index(i, c)};
                        rules[sig.var_index(j, b)] = VarRule{e.t, sig.var_index(i, c)};
                        LaurentPoly res = substitute_vars(R.poly, rules);
                        if (!res.is_zero()) {
                            std::ostringstream out;
                            out << "edge " << names[static_cast<std::size_t>(i)] << "->"
                                << names[static_cast<std::size_t>(j)] << (e.star ? "*" : "")
                                << " slots (a,b,c)=(" << a << "," << b << "," << c
                                << ") residual " << res.terms().size() << " terms";
                            return {false, out.str()};
                        }
                    }
                }
            }
        }
        return {true, {}};
    }

    for (int i = 0; i < quiver.vertex_count(); ++i) {
        if (sig.count(i) < 2) continue;
        std::map<int, VarRule> pinch;
        pinch[sig.var_index(i, 2)] = VarRule{quiver.q(), sig.var_index(i, 1)};
        LaurentPoly res = substitute_vars(R.poly, pinch);
        for (int j = 0; j < quiver.vertex_count(); ++j) {
            auto gammas = quiver.distinct_edge_parameters(i, j);
            for (const auto& gamma : gammas) {
                int flat = quiver.flat_multiplicity(i, j, gamma);
                for (int b = 1; b <= sig.count(j); ++b) {
                    if (j == i && (b == 1 || b == 2)) continue;
                    auto [ok, quot] =
                        divisible_by_power(res, sig.var_index(j, b), gamma, sig.var_index(i, 1), flat);
                    (void)quot;
                    if (!ok) {
                        std::ostringstream out;
                        out << "pinch at " << names[static_cast<std::size_t>(i)] << ", slot ("
                            << names[static_cast<std::size_t>(j)] << "," << b
                            << ") not divisible by (z - gamma z)^" << flat
                            << " for gamma=" << to_string(gamma);
                        return {false, out.str()};
                    }
                }
            }
        }
    }
    return {true, {}};
}

// Closure probe: both factors pass the wheel conditions, so must their
// product.
inline bool is_small_algebra_closed_sample(const Quiver& quiver, const ShuffleElement& R,
                                           const ShuffleElement& Rp,
                                           WheelMode mode = WheelMode::generic) {
    if (!wheel_check(quiver, R, mode).pass || !wheel_check(quiver, Rp, mode).pass)
        throw Error("closure probe requires wheel-passing factors");
    return wheel_check(quiver, shuffle_mul(quiver, R, Rp), mode).pass;
}

} // namespace quiverloop
