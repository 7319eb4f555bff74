#pragma once

/*
 * Absolute logarithmic Weil height along two independent routes: the local
 * formula (archimedean log⁺ terms plus denominator-prime valuations) and the
 * Mahler form over the element's own minimal polynomial.  The two routes
 * check each other: certified disagreement signals an arithmetic bug and is
 * raised as HeightMismatch, never averaged away.
 */

#include <quadlucas/arith.hpp>
#include <quadlucas/ideals.hpp>

#include <stdexcept>
#include <string>

namespace quadlucas {

struct HeightMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RootOfUnityAtN : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* (1/d)(Σ_σ log⁺|x^σ| + Σ_𝔭 max{0, −ν_𝔭(x)}·log N𝔭) */
inline Interval height_valuation(const FieldElement& g, long prec = Interval::kDefaultPrec) {
    if (g.is_zero()) throw ZeroElement("height: zero element");
    const QuadraticField& K = g.field();
    Interval total = sum_log_plus_embeddings(g, prec);
    IntegralForm bf = to_integral(g);
    if (!bf.c.is_one()) {
        Factorization fc = factor(bf.c);
        if (!fc.complete) throw std::runtime_error("height: denominator not fully factored");
        for (const auto& [p, e] : fc.primes) {
            (void)e;
            Interval logp = log(Interval::exact(p, prec));
            for (const auto& P : split_prime(K, p)) {
                long nu = valuation(g, P);
                if (nu < 0) total = total + logp * (-nu * P.residue_degree());
            }
        }
    }
    return total / K.degree();
}

/* (1/deg)(log a + Σ_σ log⁺|x^σ|) over the element's own degree */
inline Interval height_mahler(const FieldElement& g, long prec = Interval::kDefaultPrec) {
    if (g.is_zero()) throw ZeroElement("height: zero element");
    MinPoly mp = g.minpoly();
    if (mp.degree == 1) {
        BigInt num = abs(mp.c);
        const BigInt& big = num > mp.b ? num : mp.b;
        return log(Interval::exact(big, prec));
    }
    Interval la = log(Interval::exact(mp.a, prec));
    return (la + log_plus(abs_embedding(g, 0, prec)) + log_plus(abs_embedding(g, 1, prec))) / 2;
}

/* certified enclosure agreed on by both routes, refined to width_target */
inline Interval height(const FieldElement& g, double width_target = 1e-12) {
    for (long prec = Interval::kDefaultPrec;; prec *= 2) {
        Interval a = height_valuation(g, prec);
        Interval b = height_mahler(g, prec);
        if (!overlaps(a, b))
            throw HeightMismatch("height: valuation and Mahler routes disagree at " + g.str());
        Interval h = intersect(a, b);
        if (h.width() < width_target || prec >= Interval::kPrecCeiling) return h;
    }
}

/* one certified inequality lhs ≤ rhs with its slack */
struct Prop21Row {
    Interval lhs, rhs, margin;  /* margin = rhs − lhs */
    Trool verdict = Trool::Unknown;
};

/* |h(Φ_n(γ)) − φ(n)·h(γ)| ≤ 2^{ω(n)}·log(πn) */
inline Prop21Row check_prop21_item1(const FieldElement& g, unsigned long n) {
    if (g.is_zero()) throw ZeroElement("check_prop21_item1: zero element");
    if (n == 0) throw std::domain_error("check_prop21_item1: n must be positive");
    FieldElement pv = eval_cyclotomic(n, g);
    if (pv.is_zero()) throw RootOfUnityAtN("check_prop21_item1: cyclotomic value vanishes");

    AfValues af = arith_functions(BigInt(static_cast<long>(n)));
    Interval hphi = height(pv);
    Interval hg = height(g);
    const long prec = 192;
    Prop21Row row;
    row.lhs = abs(hphi - hg * af.phi.to_long());
    row.rhs = log(Interval::pi(prec) * static_cast<long>(n)) * (1L << af.omega);
    row.margin = row.rhs - row.lhs;
    row.verdict = certainly_le(row.lhs, row.rhs);
    return row;
}

/* log|Φ_n(γ)| ≥ −10^14·d^5·h(γ)·2^{ω(n)}·log* n at a fixed embedding */
inline Prop21Row check_prop21_item2(const FieldElement& g, unsigned long n) {
    if (g.is_zero()) throw ZeroElement("check_prop21_item2: zero element");
    if (n == 0) throw std::domain_error("check_prop21_item2: n must be positive");
    if (is_root_of_unity(g)) throw std::domain_error("check_prop21_item2: root of unity");

    FieldElement pv = eval_cyclotomic(n, g);
    long d = g.minpoly().degree;
    long dpow5 = d == 1 ? 1 : 32;
    AfValues af = arith_functions(BigInt(static_cast<long>(n)));
    Interval hg = height(g);

    Prop21Row row;
    for (long prec = 256;; prec *= 2) {
        Interval labs = log(abs_embedding(pv, 0, prec));
        Interval ln = log_star(Interval::exact(BigInt(static_cast<long>(n)), prec));
        Interval bound = Interval::exact(100000000000000L, prec) * hg * ln;
        row.lhs = -(bound * (dpow5 * (1L << af.omega)));
        row.rhs = labs;
        row.margin = row.rhs - row.lhs;
        row.verdict = certainly_le(row.lhs, row.rhs);
        if (row.verdict != Trool::Unknown || prec >= Interval::kPrecCeiling) return row;
    }
}

}  // namespace quadlucas
