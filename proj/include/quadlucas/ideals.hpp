#pragma once

/*
 * Prime ideals of quadratic orders: splitting of rational primes, p-adic
 * valuations of field elements, residue-field arithmetic and multiplicative
 * orders, and the primitive-divisor classifier for u_n = γⁿ − 1.
 *
 * Valuations are computed analytically per splitting type: norm valuations
 * for inert and ramified primes, Hensel-lifted residue maps for split primes.
 */

#include <quadlucas/bigint.hpp>
#include <quadlucas/cyclotomic.hpp>
#include <quadlucas/field.hpp>
#include <quadlucas/primes.hpp>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quadlucas {

struct NotAUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt invert_mod(const BigInt& a, const BigInt& modulus) {
    BigInt r;
    if (mpz_invert(r.raw(), a.raw(), modulus.raw()) == 0)
        throw std::domain_error("invert_mod: element not invertible");
    return r;
}

/* square root mod an odd prime (Tonelli-Shanks); input must be a residue */
inline BigInt sqrt_mod(const BigInt& a0, const BigInt& p) {
    BigInt a = mod(a0, p);
    if (a.is_zero()) return a;
    if (kronecker(a, p) != 1) throw std::domain_error("sqrt_mod: not a quadratic residue");
    if (mod(p, BigInt(4)) == 3) return powmod(a, (p + 1) / BigInt(4), p);

    auto [q, s] = remove_factor(p - 1, BigInt(2));
    BigInt z(2);
    while (kronecker(z, p) != -1) z += 1;
    BigInt m(static_cast<long>(s));
    BigInt c = powmod(z, q, p);
    BigInt t = powmod(a, q, p);
    BigInt r = powmod(a, (q + 1) / BigInt(2), p);
    while (!t.is_one()) {
        BigInt tt = t;
        long i = 0;
        while (!tt.is_one()) {
            tt = mod(tt * tt, p);
            ++i;
        }
        BigInt b = c;
        for (long j = 0; j < m.to_long() - i - 1; ++j) b = mod(b * b, p);
        m = BigInt(i);
        c = mod(b * b, p);
        t = mod(t * c, p);
        r = mod(r * b, p);
    }
    return r;
}

enum class Splitting { Split, Inert, Ramified, Rational };

inline const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::Split: return "split";
        case Splitting::Inert: return "inert";
        case Splitting::Ramified: return "ramified";
        default: return "rational";
    }
}

/* monic minimal polynomial t² + b·t + c of the integral basis generator ω */
inline std::pair<BigInt, BigInt> omega_minpoly(const QuadraticField& K) {
    if (K.half_integral_basis()) return {BigInt(-1), divexact(BigInt(1) - K.m(), BigInt(4))};
    return {BigInt(0), -K.m()};
}

class PrimeIdeal {
public:
    PrimeIdeal(QuadraticField K, BigInt p, Splitting s, int f, int e, BigInt root)
        : K_(std::move(K)),
          p_(std::move(p)),
          s_(s),
          f_(f),
          e_(e),
          root_(std::move(root)),
          lifts_(std::make_shared<LiftState>()) {
        lifts_->k = 1;
        lifts_->root = root_;
    }

    const QuadraticField& field() const { return K_; }
    const BigInt& p() const { return p_; }
    Splitting splitting() const { return s_; }
    int residue_degree() const { return f_; }
    int ramification() const { return e_; }
    BigInt ideal_norm() const { return f_ == 2 ? p_ * p_ : p_; }
    /* split: Hensel root naming the ideal; ramified: the double root of ω's minpoly */
    const BigInt& root() const { return root_; }

    std::string name() const {
        if (s_ == Splitting::Split) return p_.str() + ":" + root_.str();
        return p_.str();
    }

    /* root of ω's minimal polynomial mod p^k, Newton-lifted and cached */
    BigInt root_mod(unsigned long k) const {
        if (s_ != Splitting::Split && s_ != Splitting::Ramified)
            throw std::logic_error("root_mod: no residue root for this splitting");
        std::lock_guard<std::mutex> lk(lifts_->mu);
        if (k <= lifts_->k) return mod(lifts_->root, pow(p_, k));
        auto [b, c] = omega_minpoly(K_);
        BigInt r = lifts_->root;
        unsigned long have = lifts_->k;
        while (have < k) {
            unsigned long next = std::min(have * 2, k);
            BigInt pk = pow(p_, next);
            BigInt fr = mod(r * r + b * r + c, pk);
            BigInt fpr = mod(r * 2 + b, pk);
            r = mod(r - fr * invert_mod(fpr, pk), pk);
            have = next;
        }
        lifts_->k = have;
        lifts_->root = r;
        return mod(r, pow(p_, k));
    }

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.K_ == b.K_ && a.p_ == b.p_ && a.s_ == b.s_ && a.root_ == b.root_;
    }

private:
    struct LiftState {
        std::mutex mu;
        unsigned long k = 1;
        BigInt root;
    };

    QuadraticField K_;
    BigInt p_;
    Splitting s_;
    int f_, e_;
    BigInt root_;
    std::shared_ptr<LiftState> lifts_;
};

/*
 * Splitting of p in O_K by the Kronecker symbol (D_K | p):
 * +1 split, −1 inert, 0 ramified.  Split returns both conjugate ideals,
 * each named by its root of ω's minimal polynomial mod p.
 */
inline std::vector<PrimeIdeal> split_prime(const QuadraticField& K, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("split_prime: p must be prime");
    if (K.degree() == 1)
        return {PrimeIdeal(K, p, Splitting::Rational, 1, 1, BigInt(0))};

    int chi = kronecker(K.discriminant(), p);
    auto [b, c] = omega_minpoly(K);
    if (chi == -1) return {PrimeIdeal(K, p, Splitting::Inert, 2, 1, BigInt(0))};
    if (chi == 0) {
        /* double root of t² + bt + c mod p */
        BigInt r;
        if (p == 2) {
            r = mod(c, BigInt(2)).is_zero() ? BigInt(0) : BigInt(1);
            if (!mod(r * r + b * r + c, BigInt(2)).is_zero())
                throw std::logic_error("split_prime: no residue root at ramified 2");
        } else {
            r = mod(-b * invert_mod(BigInt(2), p), p);
        }
        return {PrimeIdeal(K, p, Splitting::Ramified, 1, 2, r)};
    }
    BigInt r1, r2;
    if (p == 2) {
        r1 = BigInt(0);
        r2 = BigInt(1);
        if (!mod(c, BigInt(2)).is_zero()) throw std::logic_error("split_prime: bad split root at 2");
    } else {
        BigInt disc = mod(b * b - 4 * c, p);
        BigInt s = sqrt_mod(disc, p);
        BigInt inv2 = invert_mod(BigInt(2), p);
        r1 = mod((-b + s) * inv2, p);
        r2 = mod((-b - s) * inv2, p);
    }
    if (r2 < r1) std::swap(r1, r2);
    return {PrimeIdeal(K, p, Splitting::Split, 1, 1, r1),
            PrimeIdeal(K, p, Splitting::Split, 1, 1, r2)};
}

/* x written as (u + v·ω)/c with u, v, c integers, c > 0 minimal */
struct IntegralForm {
    BigInt u, v, c;
};

inline IntegralForm to_integral(const FieldElement& x) {
    const QuadraticField& K = x.field();
    if (K.degree() == 1) {
        return {x.x().num(), BigInt(0), x.x().den()};
    }
    BigRat up, vp;
    if (K.half_integral_basis()) {
        vp = x.y() * 2;
        up = x.x() - x.y();
    } else {
        up = x.x();
        vp = x.y();
    }
    BigInt c = lcm(up.den(), vp.den());
    return {(up * BigRat(c)).num(), (vp * BigRat(c)).num(), c};
}

inline long rational_valuation(const BigRat& q, const BigInt& p) {
    if (q.is_zero()) throw std::domain_error("rational_valuation: zero input");
    auto [rn, en] = remove_factor(q.num(), p);
    if (en > 0) return static_cast<long>(en);
    auto [rd, ed] = remove_factor(q.den(), p);
    return -static_cast<long>(ed);
}

/*
 * Exact ν_𝔭(x).  Inert: ν_p(N(β))/2; ramified: ν_p(N(β)); split: image of β
 * under ω ↦ r_k in Z/p^k with k = ν_p(N(β)) + 1; each corrected by the
 * denominator contribution −e·ν_p(c).
 */
inline long valuation(const FieldElement& x, const PrimeIdeal& P) {
    if (x.is_zero()) throw ZeroElement("valuation: zero element");
    if (!(x.field() == P.field()))
        throw std::invalid_argument("valuation: element and ideal from different fields");
    if (P.splitting() == Splitting::Rational) return rational_valuation(x.x(), P.p());

    IntegralForm bf = to_integral(x);
    auto [cr, nu_c] = remove_factor(bf.c, P.p());
    (void)cr;

    BigRat nb = x.norm() * BigRat(bf.c * bf.c);
    BigInt nbeta = nb.num();  /* integral: norm of β */
    long nu_beta = 0;
    switch (P.splitting()) {
        case Splitting::Inert: {
            auto [r, e] = remove_factor(nbeta, P.p());
            (void)r;
            if (e % 2 != 0) throw std::logic_error("valuation: odd norm valuation at inert prime");
            nu_beta = static_cast<long>(e / 2);
            break;
        }
        case Splitting::Ramified: {
            auto [r, e] = remove_factor(nbeta, P.p());
            (void)r;
            nu_beta = static_cast<long>(e);
            break;
        }
        case Splitting::Split: {
            auto [r, nn] = remove_factor(nbeta, P.p());
            (void)r;
            unsigned long k = nn + 1;
            BigInt pk = pow(P.p(), k);
            BigInt img = mod(bf.u + bf.v * P.root_mod(k), pk);
            if (img.is_zero()) throw std::logic_error("valuation: split image vanished below cap");
            auto [ri, e] = remove_factor(img, P.p());
            (void)ri;
            nu_beta = static_cast<long>(e);
            break;
        }
        default:
            break;
    }
    return nu_beta - P.ramification() * static_cast<long>(nu_c);
}

/* ν_𝔭 of a rational integer n viewed inside K: e_𝔭·ν_p(n) */
inline long valuation_of_integer(const BigInt& n, const PrimeIdeal& P) {
    if (n.is_zero()) throw std::domain_error("valuation_of_integer: zero input");
    auto [r, e] = remove_factor(n, P.p());
    (void)r;
    return P.ramification() * static_cast<long>(e);
}

/* residue field of 𝔭: F_p when f = 1, F_p[t]/(t²+bt+c) when f = 2 */
class ResidueField {
public:
    struct Elt {
        BigInt a0, a1;
    };

    explicit ResidueField(const PrimeIdeal& P) : p_(P.p()), f_(P.residue_degree()) {
        auto [b, c] = P.field().degree() == 2 ? omega_minpoly(P.field())
                                              : std::pair<BigInt, BigInt>{BigInt(0), BigInt(0)};
        b_ = mod(b, p_);
        c_ = mod(c, p_);
        if (f_ == 1 && P.field().degree() == 2) omega_image_ = P.root();
    }

    BigInt size() const { return f_ == 2 ? p_ * p_ : p_; }

    /* image of x (must be a unit at 𝔭, checked by the caller via valuation) */
    Elt image(const FieldElement& x) const {
        IntegralForm bf = to_integral(x);
        BigInt cinv = invert_mod(mod(bf.c, p_), p_);
        if (f_ == 1) {
            BigInt v = mod((bf.u + bf.v * omega_image_) * cinv, p_);
            return {v, BigInt(0)};
        }
        return {mod(bf.u * cinv, p_), mod(bf.v * cinv, p_)};
    }

    Elt one() const { return {BigInt(1), BigInt(0)}; }
    bool is_one(const Elt& x) const { return x.a0.is_one() && x.a1.is_zero(); }
    bool is_zero(const Elt& x) const { return x.a0.is_zero() && x.a1.is_zero(); }

    Elt mul(const Elt& x, const Elt& y) const {
        if (f_ == 1) return {mod(x.a0 * y.a0, p_), BigInt(0)};
        /* (x0 + x1 t)(y0 + y1 t) with t² = −b t − c */
        BigInt t2 = x.a1 * y.a1;
        BigInt a0 = mod(x.a0 * y.a0 - t2 * c_, p_);
        BigInt a1 = mod(x.a0 * y.a1 + x.a1 * y.a0 - t2 * b_, p_);
        return {a0, a1};
    }

    Elt pow(Elt base, BigInt e) const {
        Elt acc = one();
        while (e.sign() > 0) {
            if (e.odd()) acc = mul(acc, base);
            base = mul(base, base);
            e /= BigInt(2);
        }
        return acc;
    }

private:
    BigInt p_, b_, c_, omega_image_;
    int f_;
};

/*
 * Multiplicative order of γ's image in the residue field, by factoring
 * N𝔭 − 1 and descending prime-by-prime.
 */
inline BigInt residue_order(const FieldElement& g, const PrimeIdeal& P,
                            const FactorOptions& opt = {}) {
    if (valuation(g, P) != 0) throw NotAUnit("residue_order: element is not a unit at the ideal");
    ResidueField F(P);
    auto x = F.image(g);
    if (F.is_zero(x)) throw NotAUnit("residue_order: zero image");
    BigInt o = F.size() - 1;
    Factorization of = factor(o, opt);
    if (!of.complete) throw std::runtime_error("residue_order: group order not fully factored");
    for (const auto& [q, e] : of.primes) {
        for (unsigned long i = 0; i < e; ++i) {
            BigInt cand = divexact(o, q);
            if (F.is_one(F.pow(x, cand))) o = cand;
            else break;
        }
    }
    return o;
}

enum class Primitivity { Primitive, NonPrimitive, NotADivisor };

inline const char* to_string(Primitivity v) {
    switch (v) {
        case Primitivity::Primitive: return "primitive";
        case Primitivity::NonPrimitive: return "non-primitive";
        default: return "not-a-divisor";
    }
}

struct PrimitivityVerdict {
    Primitivity verdict = Primitivity::NotADivisor;
    BigInt order;  /* multiplicative order of γ mod 𝔭 */
};

/*
 * Order-based classifier: 𝔭 divides u_n = γⁿ − 1 iff ord_𝔭(γ) | n, and is a
 * primitive divisor iff ord_𝔭(γ) = n exactly.
 */
inline PrimitivityVerdict classify_primitivity(const FieldElement& g, unsigned long n,
                                               const PrimeIdeal& P, const FactorOptions& opt = {}) {
    if (n == 0) throw std::domain_error("classify_primitivity: n must be positive");
    if (is_root_of_unity(g))
        throw std::domain_error("classify_primitivity: γ must not be a root of unity");
    PrimitivityVerdict v;
    v.order = residue_order(g, P, opt);
    BigInt N(static_cast<long>(n));
    if (v.order == N) v.verdict = Primitivity::Primitive;
    else if (divisible(N, v.order)) v.verdict = Primitivity::NonPrimitive;
    else v.verdict = Primitivity::NotADivisor;
    return v;
}

/*
 * Definitional classifier: scans ν_𝔭(u_k) for k < n through the valuation
 * machinery; quadratic in n, used as the cross-check oracle.
 */
inline PrimitivityVerdict classify_primitivity_scan(const FieldElement& g, unsigned long n,
                                                    const PrimeIdeal& P) {
    if (n == 0) throw std::domain_error("classify_primitivity_scan: n must be positive");
    if (valuation(g, P) != 0)
        throw NotAUnit("classify_primitivity_scan: element is not a unit at the ideal");
    PrimitivityVerdict v;
    unsigned long first = 0;
    for (unsigned long k = 1; k <= n; ++k) {
        FieldElement uk = pow_minus_one(g, k);
        if (uk.is_zero()) throw std::domain_error("classify_primitivity_scan: torsion element");
        if (valuation(uk, P) >= 1) {
            first = k;
            break;
        }
    }
    v.order = BigInt(static_cast<long>(first));  /* 0 encodes "no divisor index ≤ n" */
    if (first == n) v.verdict = Primitivity::Primitive;
    else if (first != 0 && n % first == 0) v.verdict = Primitivity::NonPrimitive;
    else v.verdict = Primitivity::NotADivisor;
    return v;
}

struct Prop22Row {
    PrimitivityVerdict classification;
    long nu_phi = 0;          /* ν_𝔭(Φ_n(γ)) */
    bool item1_checked = false;
    bool item1_nu_ok = false;      /* ν_𝔭(Φ_n(γ)) ≥ 1 */
    bool item1_congruence_ok = false; /* N𝔭 ≡ 1 mod n */
    bool item2_checked = false;    /* requires non-primitive and n ≥ 2^{d+1} */
    bool item2_ok = false;         /* ν_𝔭(Φ_n(γ)) ≤ e·ν_p(n) */
    long nu_n = 0;
    bool skipped_hypothesis = false;
};

inline Prop22Row check_prop22(const FieldElement& g, unsigned long n, const PrimeIdeal& P,
                              const FactorOptions& opt = {}) {
    if (n == 0) throw std::domain_error("check_prop22: n must be positive");
    Prop22Row row;
    row.classification = classify_primitivity(g, n, P, opt);
    FieldElement phi_val = eval_cyclotomic(n, g);
    if (phi_val.is_zero()) throw std::domain_error("check_prop22: cyclotomic value vanishes");
    row.nu_phi = valuation(phi_val, P);

    const unsigned long threshold = g.field().degree() == 2 ? 8 : 4; /* 2^{d+1} */
    if (row.classification.verdict == Primitivity::Primitive) {
        row.item1_checked = true;
        row.item1_nu_ok = row.nu_phi >= 1;
        row.item1_congruence_ok =
            mod(P.ideal_norm() - 1, BigInt(static_cast<long>(n))).is_zero();
    } else if (row.classification.verdict == Primitivity::NonPrimitive) {
        if (n >= threshold) {
            row.item2_checked = true;
            row.nu_n = valuation_of_integer(BigInt(static_cast<long>(n)), P);
            row.item2_ok = row.nu_phi <= row.nu_n;
        } else {
            row.skipped_hypothesis = true;
        }
    }
    return row;
}

}  // namespace quadlucas
