#include <catch2/catch_amalgamated.hpp>

#include <quiverloop/shuffle.hpp>
#include <quiverloop/words.hpp>

#include "test_rng.hpp"

using namespace quiverloop;

namespace {

Quiver a2() {
    auto r = make_ring({"q", "t"});
    return Quiver(r, {"i", "j"}, {{0, 1}}, parse_scalar("q", r), {parse_scalar("t", r)});
}

Quiver jordan() {
    auto r = make_ring({"q", "t"});
    return Quiver(r, {"i"}, {{0, 0}}, parse_scalar("q", r), {parse_scalar("t", r)});
}

Quiver two_loops_equal() {
    auto r = make_ring({"q", "t"});
    return Quiver(r, {"i"}, {{0, 0}, {0, 0}}, parse_scalar("q", r),
                  {parse_scalar("t", r), parse_scalar("t", r)});
}

ShuffleElement upsilon_word(const Quiver& qv, const Word& w) {
    ShuffleElement acc = shuffle_unit(qv);
    for (const auto& l : w.letters)
        acc = shuffle_mul(qv, acc, one_variable_element(qv, l.vertex, l.exponent));
    return acc;
}

SymLaurent random_sym(const Quiver& qv, const ColorSignature& sig, Rng& rng, int lo = -2,
                      int hi = 2) {
    LaurentPoly p = LaurentPoly::zero(qv.ring(), sig);
    int terms = rng.int_in(1, 2);
    int vdeg = 0;
    for (int t = 0; t < terms; ++t) {
        Exponents e(static_cast<std::size_t>(sig.total()));
        int sum = 0;
        for (auto& x : e) { x = rng.int_in(lo, hi); sum += x; }
        if (t == 0) vdeg = sum;
        else if (sum != vdeg) { e[0] += vdeg - sum; }
        p.add_term(e, ParamScalar::integer(qv.ring(), rng.int_in(1, 3) * (rng.chance(1, 2) ? 1 : -1)));
    }
    if (p.is_zero()) return SymLaurent{p, vdeg};
    return make_sym_laurent(symmetrize(p), false);
}

} // namespace

TEST_CASE("unit law") {
    for (const Quiver& qv : {a2(), jordan()}) {
        TestRng rng(7);
        ColorSignature sig = qv.vertex_count() == 2 ? ColorSignature({2, 1}) : ColorSignature({2});
        SymLaurent R = random_sym(qv, sig, rng);
        CHECK(shuffle_mul(qv, R, shuffle_unit(qv)) == R);
        CHECK(shuffle_mul(qv, shuffle_unit(qv), R) == R);
    }
}

TEST_CASE("A2 one-letter product is the kernel itself") {
    Quiver qv = a2();
    auto r = qv.ring();
    ShuffleElement p = shuffle_mul(qv, one_variable_element(qv, 0, 0), one_variable_element(qv, 1, 0));
    // zeta_ij(z_i/z_j) = 1/t - z_i/z_j
    LaurentPoly want = LaurentPoly::constant(r, ColorSignature({1, 1}), parse_scalar("1/t", r));
    want.add_term({1, -1}, parse_scalar("-1", r));
    CHECK(p.poly == want);
    CHECK(p.vdeg == 0);
}

TEST_CASE("Jordan one-letter product against the rational oracle") {
    Quiver qv = jordan();
    auto r = qv.ring();
    ShuffleElement p = shuffle_mul(qv, one_variable_element(qv, 0, 0), one_variable_element(qv, 0, 0));
    // (z1 - z2) * result == -z2 ztilde(z1/z2) + z1 ztilde(z2/z1)
    ColorSignature sig({2});
    const UniLaurent& zt = qv.zeta_tilde(0, 0);
    LaurentPoly rhs = LaurentPoly::zero(r, sig);
    for (const auto& [k, c] : zt.terms()) {
        // -z2 * (z1/z2)^k
        Exponents e1(2, 0);
        e1[0] = k;
        e1[1] = 1 - k;
        rhs.add_term(e1, -c);
        // z1 * (z2/z1)^k
        Exponents e2(2, 0);
        e2[0] = 1 - k;
        e2[1] = k;
        rhs.add_term(e2, c);
    }
    LaurentPoly z1 = LaurentPoly::monomial(r, sig, {1, 0}, ParamScalar::one(r));
    LaurentPoly z2 = LaurentPoly::monomial(r, sig, {0, 1}, ParamScalar::one(r));
    CHECK((z1 - z2) * p.poly == rhs);
}

TEST_CASE("associativity on random triples") {
    TestRng rng(11);
    Quiver q2 = a2();
    Quiver qj = jordan();
    for (int it = 0; it < 6; ++it) {
        SymLaurent a = random_sym(q2, ColorSignature({1, 0}), rng);
        SymLaurent b = random_sym(q2, ColorSignature({1, 1}), rng);
        SymLaurent c = random_sym(q2, ColorSignature({0, 1}), rng);
        CHECK(shuffle_mul(q2, shuffle_mul(q2, a, b), c) == shuffle_mul(q2, a, shuffle_mul(q2, b, c)));

        SymLaurent x = random_sym(qj, ColorSignature({1}), rng);
        SymLaurent y = random_sym(qj, ColorSignature({2}), rng);
        SymLaurent z = random_sym(qj, ColorSignature({2}), rng);
        CHECK(shuffle_mul(qj, shuffle_mul(qj, x, y), z) == shuffle_mul(qj, x, shuffle_mul(qj, y, z)));
    }
}

TEST_CASE("grading adds") {
    TestRng rng(13);
    Quiver qv = a2();
    SymLaurent a = random_sym(qv, ColorSignature({1, 1}), rng);
    SymLaurent b = random_sym(qv, ColorSignature({1, 0}), rng);
    ShuffleElement p = shuffle_mul(qv, a, b);
    CHECK(p.vdeg == a.vdeg + b.vdeg);
    CHECK(p.poly.signature() == ColorSignature({2, 1}));
}

TEST_CASE("slot cap raises SignatureOverflow") {
    Quiver qv = jordan();
    TestRng rng(17);
    SymLaurent a = random_sym(qv, ColorSignature({3}), rng);
    CHECK_THROWS_AS(shuffle_mul(qv, a, a, 5), SignatureOverflow);
}

TEST_CASE("wheel conditions: vacuous, violated, and satisfied") {
    Quiver qv = jordan();
    auto r = qv.ring();

    // horizontal degree one: vacuous
    CHECK(wheel_check(qv, one_variable_element(qv, 0, 3)).pass);

    // constant in 3 slots: fails with residual 1
    SymLaurent bad{LaurentPoly::constant(r, ColorSignature({3}), ParamScalar::one(r)), 0};
    auto res = wheel_check(qv, bad);
    CHECK_FALSE(res.pass);
    CHECK(res.witness.find("residual") != std::string::npos);

    // images of word products satisfy the wheel conditions
    TestRng rng(19);
    for (int it = 0; it < 5; ++it) {
        Word w;
        for (int k = 0; k < 3; ++k) w.letters.push_back({0, rng.int_in(-2, 2)});
        CHECK(wheel_check(qv, upsilon_word(qv, w)).pass);
    }
    Quiver q2 = a2();
    for (int it = 0; it < 5; ++it) {
        Word w;
        w.letters.push_back({0, rng.int_in(-2, 2)});
        w.letters.push_back({0, rng.int_in(-2, 2)});
        w.letters.push_back({1, rng.int_in(-2, 2)});
        CHECK(wheel_check(q2, upsilon_word(q2, w)).pass);
    }
}

TEST_CASE("specialized wheel conditions with coincident parameters") {
    Quiver qv = two_loops_equal();
    CHECK(qv.flat_multiplicity(0, 0, parse_scalar("t", qv.ring())) == 2);
    TestRng rng(23);
    for (int it = 0; it < 4; ++it) {
        Word w;
        for (int k = 0; k < 3; ++k) w.letters.push_back({0, rng.int_in(-1, 1)});
        ShuffleElement img = upsilon_word(qv, w);
        CHECK(wheel_check(qv, img, WheelMode::specialized).pass);
    }
    // a constant in three slots is not divisible by anything
    SymLaurent bad{LaurentPoly::constant(qv.ring(), ColorSignature({3}), ParamScalar::one(qv.ring())), 0};
    CHECK_FALSE(wheel_check(qv, bad, WheelMode::specialized).pass);
}

TEST_CASE("generic and specialized modes agree for distinct parameters") {
    Quiver qv = jordan();
    TestRng rng(29);
    for (int it = 0; it < 4; ++it) {
        Word w;
        for (int k = 0; k < 3; ++k) w.letters.push_back({0, rng.int_in(-1, 1)});
        ShuffleElement img = upsilon_word(qv, w);
        CHECK(wheel_check(qv, img, WheelMode::generic).pass);
        CHECK(wheel_check(qv, img, WheelMode::specialized).pass);
    }
}

TEST_CASE("small algebra closure on wheel-passing samples") {
    TestRng rng(31);
    Quiver qj = jordan();
    Quiver q2 = a2();
    for (int it = 0; it < 4; ++it) {
        Word w1, w2;
        w1.letters.push_back({0, rng.int_in(-1, 1)});
        w1.letters.push_back({0, rng.int_in(-1, 1)});
        w2.letters.push_back({0, rng.int_in(-1, 1)});
        CHECK(is_small_algebra_closed_sample(qj, upsilon_word(qj, w1), upsilon_word(qj, w2)));

        Word u1, u2;
        u1.letters.push_back({0, rng.int_in(-1, 1)});
        u1.letters.push_back({1, rng.int_in(-1, 1)});
        u2.letters.push_back({0, rng.int_in(-1, 1)});
        u2.letters.push_back({1, rng.int_in(-1, 1)});
        CHECK(is_small_algebra_closed_sample(q2, upsilon_word(q2, u1), upsilon_word(q2, u2)));
    }
    // unit * wheel-passing stays wheel-passing
    Word w;
    w.letters.push_back({0, 1});
    w.letters.push_back({0, -1});
    CHECK(is_small_algebra_closed_sample(qj, shuffle_unit(qj), upsilon_word(qj, w)));
}

TEST_CASE("quadratic exchange relation holds in the big shuffle algebra") {
    // Upsilon of the cleared quadratic relation must vanish identically:
    // for all modes (a,b),
    //   sum_k c^{ji}_k z_i^{a+d-k} * z_j^{b+k}
    //     = (-1)^d sum_l c^{ij}_l z_j^{b+d-l} * z_i^{a+l},   d = delta_ij.
    for (const Quiver& qv : {a2(), jordan()}) {
        for (int i = 0; i < qv.vertex_count(); ++i)
            for (int j = 0; j < qv.vertex_count(); ++j) {
                const int d = (i == j) ? 1 : 0;
                const UniLaurent& zji = qv.zeta_tilde(j, i);
                const UniLaurent& zij = qv.zeta_tilde(i, j);
                for (int a = -1; a <= 1; ++a)
                    for (int b = -1; b <= 1; ++b) {
                        ColorSignature sig =
                            ColorSignature::unit(static_cast<std::size_t>(qv.vertex_count()), i) +
                            ColorSignature::unit(static_cast<std::size_t>(qv.vertex_count()), j);
                        LaurentPoly lhs = LaurentPoly::zero(qv.ring(), sig);
                        LaurentPoly rhs = lhs;
                        for (const auto& [k, c] : zji.terms()) {
                            ShuffleElement m = shuffle_mul(
                                qv, one_variable_element(qv, i, a + d - k),
                                one_variable_element(qv, j, b + k));
                            lhs += m.poly * c;
                        }
                        for (const auto& [l, c] : zij.terms()) {
                            ShuffleElement m = shuffle_mul(
                                qv, one_variable_element(qv, j, b + d - l),
                                one_variable_element(qv, i, a + l));
                            rhs += m.poly * c;
                        }
                        if (d == 1) rhs = -rhs;
                        CHECK(lhs == rhs);
                    }
            }
    }
}
