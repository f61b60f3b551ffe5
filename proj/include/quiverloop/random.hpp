/*
 * random.hpp
 * ----------
 * Deterministic, platform-independent randomness for the property suites.
 * splitmix64 underneath; identical seeds give identical streams everywhere,
 * which keeps reports byte-identical.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "scalars.hpp"

namespace quiverloop {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform in [lo, hi] inclusive.
    int int_in(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

private:
    std::uint64_t state_;
};

// Small random Laurent polynomial in the ring symbols: 1..3 terms, exponents
// in [-2,2], coefficients in [-3,3] \ {0}.
inline ParamPoly random_param_poly(const RingPtr& ring, Rng& rng) {
    ParamPoly p(ring);
    int nterms = rng.int_in(1, 3);
    for (int t = 0; t < nterms; ++t) {
        Exponents e(ring->size());
        for (auto& x : e) x = rng.int_in(-2, 2);
        int c = rng.int_in(1, 3) * (rng.chance(1, 2) ? 1 : -1);
        p.add_term(e, mpz_class(c));
    }
    return p;
}

// Random field element; denominators appear with probability 1/3.
inline ParamScalar random_scalar(const RingPtr& ring, Rng& rng) {
    ParamPoly num = random_param_poly(ring, rng);
    if (rng.chance(1, 3)) {
        ParamPoly den = random_param_poly(ring, rng);
        if (!den.is_zero()) return ParamScalar(num, den);
    }
    return ParamScalar::from_poly(num);
}

// Random nonzero field element.
inline ParamScalar random_nonzero_scalar(const RingPtr& ring, Rng& rng) {
    for (;;) {
        ParamScalar s = random_scalar(ring, rng);
        if (!s.is_zero()) return s;
    }
}

} // namespace quiverloop
