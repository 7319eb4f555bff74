#pragma once

/*
 * Per-(γ, n) proof ledger.  Computes P (the largest rational prime below a
 * prime ideal dividing Φ_n(γ)), the finite-place sums split by primitivity
 * and residue degree, the conjugate-quotient valuation chain with its d_p
 * table, and a verdict/margin row for every displayed inequality.  Rows come
 * in two strengths: asserted (unconditional at any n, or gated on an explicit
 * small hypothesis) and report-only (derivations valid only beyond the
 * effectivity thresholds; evaluated and recorded, never load-bearing).
 */

#include <quadlucas/arith.hpp>
#include <quadlucas/bigint.hpp>
#include <quadlucas/cyclotomic.hpp>
#include <quadlucas/field.hpp>
#include <quadlucas/height.hpp>
#include <quadlucas/ideals.hpp>
#include <quadlucas/interval.hpp>
#include <quadlucas/primes.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace quadlucas {

struct DegreeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Verdict { Holds, Fails, Vacuous, SkippedHypothesis };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Vacuous: return "vacuous";
        default: return "skipped-hypothesis";
    }
}

struct LedgerRow {
    std::string id;
    Interval lhs = Interval::exact(0L);
    Interval rhs = Interval::exact(0L);
    Verdict verdict = Verdict::Vacuous;
    double margin = 0; /* certified lower bound of rhs − lhs; overlap width for identities */
    bool asserted = false;
    std::string note;
};

/* Σ w·log p held exactly as Π p^w; value() is then a one-log enclosure */
struct LogShadow {
    BigInt prod = BigInt(1);
    void add(const BigInt& p, long w) {
        if (w > 0) prod *= pow(p, static_cast<unsigned long>(w));
    }
    Interval value(long prec = Interval::kDefaultPrec) const {
        return log(Interval::exact(prod, prec));
    }
};

namespace detail {

template <class F>
inline LedgerRow le_row(std::string id, F&& sides, bool asserted, bool strict = false) {
    LedgerRow row;
    row.id = std::move(id);
    row.asserted = asserted;
    for (long prec = 192;; prec *= 2) {
        auto [lhs, rhs] = sides(prec);
        row.lhs = lhs;
        row.rhs = rhs;
        row.margin = (rhs - lhs).lower();
        Trool t = strict ? certainly_lt(lhs, rhs) : certainly_le(lhs, rhs);
        if (t == Trool::True) {
            row.verdict = Verdict::Holds;
            return row;
        }
        if (t == Trool::False) {
            row.verdict = Verdict::Fails;
            return row;
        }
        if (prec >= Interval::kPrecCeiling) {
            row.verdict = Verdict::Fails;
            row.note = "undecided at precision ceiling";
            return row;
        }
    }
}

template <class F>
inline LedgerRow eq_row(std::string id, F&& sides, bool asserted, double width_target = 1e-9) {
    LedgerRow row;
    row.id = std::move(id);
    row.asserted = asserted;
    for (long prec = 192;; prec *= 2) {
        auto [lhs, rhs] = sides(prec);
        row.lhs = lhs;
        row.rhs = rhs;
        row.margin = std::min(lhs.upper(), rhs.upper()) - std::max(lhs.lower(), rhs.lower());
        if (!overlaps(lhs, rhs)) {
            row.verdict = Verdict::Fails;
            return row;
        }
        if (lhs.width() < width_target && rhs.width() < width_target) {
            row.verdict = Verdict::Holds;
            return row;
        }
        if (prec >= Interval::kPrecCeiling) {
            row.verdict = Verdict::Holds;
            row.note = "width target missed at precision ceiling";
            return row;
        }
    }
}

/* lhs ≤ rhs decided exactly on the Π p^w shadows; intervals only for display */
inline LedgerRow exact_log_row(std::string id, const BigInt& lhs_prod, const BigInt& rhs_prod,
                               bool asserted) {
    LedgerRow row;
    row.id = std::move(id);
    row.asserted = asserted;
    const long prec = 192;
    row.lhs = log(Interval::exact(lhs_prod, prec));
    row.rhs = log(Interval::exact(rhs_prod, prec));
    row.margin = (row.rhs - row.lhs).lower();
    row.verdict = lhs_prod <= rhs_prod ? Verdict::Holds : Verdict::Fails;
    return row;
}

inline LedgerRow count_row(std::string id, long violations, long applicable, bool asserted) {
    LedgerRow row;
    row.id = std::move(id);
    row.lhs = Interval::exact(BigInt(violations));
    row.rhs = Interval::exact(0L);
    row.margin = -static_cast<double>(violations);
    row.asserted = asserted;
    if (applicable == 0) row.verdict = Verdict::Vacuous;
    else row.verdict = violations == 0 ? Verdict::Holds : Verdict::Fails;
    return row;
}

/*
 * Demote an evaluated row to report-only when its derivation hypothesis is
 * unmet at this n: the verdict stays (still informative), the assertion flag
 * drops.
 */
inline LedgerRow demote(LedgerRow row, bool hypothesis_met, const char* note) {
    if (!hypothesis_met) {
        row.asserted = false;
        row.note = note;
    }
    return row;
}

inline LedgerRow vacuous_row(std::string id, const char* note, bool asserted) {
    LedgerRow row;
    row.id = std::move(id);
    row.verdict = Verdict::Vacuous;
    row.asserted = asserted;
    row.note = note;
    return row;
}

}  // namespace detail

/* n·exp(0.0001·log n / log log n) */
inline Interval main_bound(unsigned long n, long prec = 192) {
    if (n < 3) throw std::domain_error("main_bound: n must be at least 3");
    Interval ln = log(Interval::exact(BigInt(static_cast<long>(n)), prec));
    return Interval::exact(BigInt(static_cast<long>(n)), prec) *
           exp(Interval::exact(BigRat(1, 10000), prec) * ln / log(ln));
}

/* N𝔭·exp(−0.002·d⁻¹·log N𝔭 / log log N𝔭)·h(γ)·log* n */
inline Interval thm21_rhs(const BigInt& Np, int d, const Interval& h, unsigned long n,
                          long prec = 192) {
    if (Np < 3) throw std::domain_error("thm21_rhs: ideal norm must be at least 3");
    if (d < 1) throw std::domain_error("thm21_rhs: degree must be positive");
    Interval lN = log(Interval::exact(Np, prec));
    Interval lsn = log_star(Interval::exact(BigInt(static_cast<long>(n)), prec));
    return Interval::exact(Np, prec) *
           exp(-(Interval::exact(BigRat(1, 500L * d), prec) * lN / log(lN))) * h * lsn;
}

/* p·exp(−0.001·log p / log log p)·h(γ)·log* n */
inline Interval thm22_rhs(const BigInt& p, const Interval& h, unsigned long n, long prec = 192) {
    if (p < 3) throw std::domain_error("thm22_rhs: p must be at least 3");
    Interval lp = log(Interval::exact(p, prec));
    Interval lsn = log_star(Interval::exact(BigInt(static_cast<long>(n)), prec));
    return Interval::exact(p, prec) *
           exp(-(Interval::exact(BigRat(1, 1000), prec) * lp / log(lp))) * h * lsn;
}

/*
 * Effectivity thresholds on log scales; the integers themselves are
 * astronomically large and never materialized.
 */
struct Thresholds {
    BigInt log_p0_general;   /* 80000·d·(log* d)², log* d = 1 for d ≤ 2 */
    BigInt loglog_n0;        /* max{10^10, 3·|D_K|} */
    BigInt loglog_p0_quad;   /* max{10^8, 2·|D_K|} */
};

inline Thresholds thresholds(const QuadraticField& K, int d) {
    if (d < 1 || d > 2) throw std::domain_error("thresholds: degree must be 1 or 2");
    Thresholds t;
    t.log_p0_general = BigInt(80000L * d);
    BigInt aD = abs(K.discriminant());
    t.loglog_n0 = std::max(pow(BigInt(10), 10), aD * 3);
    t.loglog_p0_quad = std::max(pow(BigInt(10), 8), aD * 2);
    return t;
}

struct PResult {
    BigInt P = BigInt(1);
    bool exact = true;
    std::string witness; /* name of an ideal attaining the max; empty when P = 1 */
};

/* largest rational prime below a 𝔭 with ν_𝔭(Φ_n(γ)) ≥ 1 */
inline PResult compute_P(const FieldElement& g, unsigned long n, const FactorOptions& opt = {}) {
    if (g.is_zero()) throw ZeroElement("compute_P: zero element");
    if (is_root_of_unity(g)) throw RootOfUnityAtN("compute_P: γ is a root of unity");
    if (n == 0) throw std::domain_error("compute_P: n must be positive");
    FieldElement val = eval_cyclotomic(n, g);
    PResult r;
    BigInt num = abs(val.norm().num());
    if (num.is_one()) return r;
    Factorization f = factor(num, opt);
    r.exact = f.complete;
    for (auto it = f.primes.rbegin(); it != f.primes.rend(); ++it) {
        for (const PrimeIdeal& P : split_prime(g.field(), it->first)) {
            if (valuation(val, P) >= 1) {
                r.P = it->first;
                r.witness = P.name();
                break;
            }
        }
        if (r.P > 1) break;
    }
    return r;
}

/*
 * Degree-general and unit-norm valuation theorem rows at one ideal.  The size
 * hypotheses are tested honestly on the log scale; at desk scale they are
 * never met, so the rows arrive as skipped-hypothesis with both sides filled.
 */
inline std::pair<LedgerRow, LedgerRow> check_valuation_theorems(const FieldElement& g,
                                                                unsigned long n,
                                                                const PrimeIdeal& P) {
    if (g.is_zero()) throw ZeroElement("check_valuation_theorems: zero element");
    if (n == 0) throw std::domain_error("check_valuation_theorems: n must be positive");
    LedgerRow a, b;
    a.id = "thm2.1";
    b.id = "thm2.2";
    const long prec = 192;

    FieldElement un = pow_minus_one(g, n);
    if (un.is_zero()) throw std::domain_error("check_valuation_theorems: γ^n = 1");
    long nu = valuation(un, P);
    a.lhs = b.lhs = Interval::exact(BigInt(nu), prec);
    if (nu == 0) {
        a.verdict = b.verdict = Verdict::Vacuous;
        a.note = b.note = "nu = 0 at this ideal";
        return {a, b};
    }

    Interval h = height(g);
    int d = g.minpoly().degree;
    Thresholds th = thresholds(g.field(), d);

    BigInt Np = P.ideal_norm();
    if (Np >= 3) {
        a.rhs = thm21_rhs(Np, d, h, n, prec);
        bool met = certainly_le(Interval::exact(th.log_p0_general, prec),
                                log(Interval::exact(Np, prec))) == Trool::True;
        if (met)
            a.verdict = certainly_le(a.lhs, a.rhs) == Trool::True ? Verdict::Holds : Verdict::Fails;
        else {
            a.verdict = Verdict::SkippedHypothesis;
            a.note = "log N_ideal < " + th.log_p0_general.str();
        }
        a.margin = (a.rhs - a.lhs).lower();
    } else {
        a.verdict = Verdict::SkippedHypothesis;
        a.note = "ideal norm below 3; rhs undefined";
    }

    bool unit_norm = abs(g.norm()) == BigRat(1);
    if (g.field().degree() != 2 || !unit_norm) {
        b.verdict = Verdict::SkippedHypothesis;
        b.note = "needs degree 2 and norm +-1";
    } else if (P.p() < 3) {
        b.verdict = Verdict::SkippedHypothesis;
        b.note = "p below 3; rhs undefined";
    } else {
        b.rhs = thm22_rhs(P.p(), h, n, prec);
        /* hypothesis p >= exp exp(max{10^8, 2|D_K|}): compare log log p */
        Interval llp = log(log(Interval::exact(P.p(), prec)));
        bool met = certainly_le(Interval::exact(th.loglog_p0_quad, prec), llp) == Trool::True;
        if (met)
            b.verdict = certainly_le(b.lhs, b.rhs) == Trool::True ? Verdict::Holds : Verdict::Fails;
        else {
            b.verdict = Verdict::SkippedHypothesis;
            b.note = "log log p < " + th.loglog_p0_quad.str();
        }
        b.margin = (b.rhs - b.lhs).lower();
    }
    return {a, b};
}

struct PhiPrimeRow { /* one ideal with ν_𝔭(Φ_n(γ)) ≥ 1 */
    std::string ideal;
    BigInt p;
    int f = 1;
    int e = 1;
    long nu = 0;
    bool primitive = false;
};

struct DpEntry {
    BigInt p;
    unsigned long ord = 0; /* multiplicative order of β at the inert ideal */
    unsigned long d_p = 0; /* = n / ord */
    long nu_v_ord = 0;     /* ν_p(β^{n/d_p} − 1) */
    long nu_v_n = 0;       /* ν_p(β^n − 1) */
};

struct BetaData {
    bool torsion = false;
    std::string beta;
    std::vector<BigInt> curly_p;   /* 𝒫: inert p, γ a p-unit, ν_p(γ^n−1) > 0 */
    std::vector<BigInt> excluded;  /* inert candidates dropped: γ not a p-unit */
    std::vector<DpEntry> dp;
    long small_divisor_count = 0;  /* #{d | n : d < τ(n)·log n} */
    long curly_p_prime_count = 0;  /* #𝒫′ */
    LogShadow sum_vn;              /* Σ_{p∈𝒫} ν_p(β^n−1)·log p */
    LogShadow sum_vord;            /* Σ_{p∈𝒫} ν_p(v_{n/d_p})·log p */
    LogShadow sum_seven;           /* Σ_{m≤7} Σ_{p∈𝒫} ν_p(Φ_m(β))·log p */
    LogShadow sum_bigdp;           /* d_p ≥ τ(n)·log n slice of sum_vord */
    LogShadow sum_smalldp;         /* 𝒫′ slice of sum_vord */
    std::vector<LedgerRow> rows;
};

namespace detail {

struct DivisorScanData {
    std::set<BigInt> primes; /* all primes of num(N(Φ_d(γ))), d | n */
    BigInt p_un = BigInt(1); /* max p with ν_𝔭(γ^n − 1) ≥ 1 */
    std::string p_un_witness;
    bool complete = true;
};

inline DivisorScanData divisor_scan(const FieldElement& g, unsigned long n,
                                    const FactorOptions& opt) {
    DivisorScanData out;
    for (long dv : divisors(static_cast<long>(n))) {
        FieldElement val = eval_cyclotomic(static_cast<unsigned long>(dv), g);
        BigInt num = abs(val.norm().num());
        if (num.is_one()) continue;
        Factorization f = factor(num, opt);
        out.complete = out.complete && f.complete;
        for (const auto& [p, e] : f.primes) {
            (void)e;
            out.primes.insert(p);
        }
    }
    FieldElement un = pow_minus_one(g, n);
    for (auto it = out.primes.rbegin(); it != out.primes.rend(); ++it) {
        for (const PrimeIdeal& P : split_prime(g.field(), *it)) {
            if (valuation(g, P) != 0) continue;
            if (valuation(un, P) >= 1) {
                out.p_un = *it;
                out.p_un_witness = P.name();
                break;
            }
        }
        if (out.p_un > 1) break;
    }
    return out;
}

/* exp(c·log n·log log log n / (log log n)²), the shared [BHL21] divisor-count shape */
inline Interval bhl_count_bound(unsigned long n, long c, long prec) {
    Interval ln = log(Interval::exact(BigInt(static_cast<long>(n)), prec));
    Interval lln = log(ln);
    return exp(Interval::exact(BigInt(c), prec) * ln * log(lln) / (lln * lln));
}

struct BetaCtx {
    const FieldElement& g;
    unsigned long n;
    const FieldElement& phi_val;
    const Interval& h;           /* height(γ) */
    const BigInt& P;
    const std::set<BigInt>& candidates;
    bool gamma_integral;
};

inline BetaData beta_chain_impl(const BetaCtx& ctx) {
    const FieldElement& g = ctx.g;
    const unsigned long n = ctx.n;
    const QuadraticField& K = g.field();
    BetaData bd;

    FieldElement beta = g.conjugate() / g;
    bd.beta = beta.str();
    bd.torsion = is_root_of_unity(beta);

    AfValues af = arith_functions(BigInt(static_cast<long>(n)));
    const long tau_n = af.tau.to_long();
    const long phi_n = af.phi.to_long();
    std::vector<long> divs = divisors(static_cast<long>(n));

    /* #{d | n : d < τ(n)·log n}, resolved by certified comparison */
    bd.small_divisor_count = 0;
    for (long d : divs) {
        Trool below = certify([&](long prec) {
            return certainly_lt(Interval::exact(BigInt(d), prec),
                                Interval::exact(BigInt(tau_n), prec) *
                                    log(Interval::exact(BigInt(static_cast<long>(n)), prec)));
        });
        if (below == Trool::True) ++bd.small_divisor_count;
    }

    if (bd.torsion) {
        const char* why = "beta is a root of unity; companion sequence degenerates";
        for (const char* id : {"beta.eq", "beta.chain.1", "beta.chain.2", "beta.chain.3",
                               "dp.unique", "eq17", "eq19", "eq20", "bigdp", "smalldlow",
                               "smalldupb", "carppp", "pprime.sq", "padicofb", "smalldup",
                               "sec323.final"})
            bd.rows.push_back(vacuous_row(id, why, false));
        BigInt proddiv(1);
        for (long d : divs) proddiv *= BigInt(d);
        bd.rows.push_back(exact_log_row(
            "eq18", proddiv,
            pow(BigInt(static_cast<long>(n)), static_cast<unsigned long>(tau_n)), true));
        return bd;
    }

    /* 𝒫 from the divisor-norm candidate primes */
    FieldElement un = pow_minus_one(g, n);
    std::vector<PrimeIdeal> inert_ideals;
    for (const BigInt& p : ctx.candidates) {
        if (kronecker(K.discriminant(), p) != -1) continue;
        PrimeIdeal P = split_prime(K, p)[0];
        if (valuation(g, P) != 0) {
            bd.excluded.push_back(p);
            continue;
        }
        if (valuation(un, P) > 0) {
            bd.curly_p.push_back(p);
            inert_ideals.push_back(P);
        }
    }

    /* chain, order scan, and the exact shadows, per p ∈ 𝒫 */
    FieldElement conj_un = power(g.conjugate(), n) - BigRat(1);
    FieldElement mid = power(g.conjugate(), n) - power(g, n);
    std::map<unsigned long, FieldElement> vbeta; /* m ↦ β^m − 1 */
    auto v_at = [&](unsigned long m) -> const FieldElement& {
        auto it = vbeta.find(m);
        if (it == vbeta.end()) it = vbeta.emplace(m, pow_minus_one(beta, m)).first;
        return it->second;
    };

    long eq_viol = 0, c1_viol = 0, c2_viol = 0, c3_viol = 0, dp_viol = 0, sq_viol = 0;
    for (std::size_t i = 0; i < bd.curly_p.size(); ++i) {
        const BigInt& p = bd.curly_p[i];
        const PrimeIdeal& P = inert_ideals[i];
        long nu_un = valuation(un, P);
        long nu_conj = valuation(conj_un, P);
        long nu_mid = valuation(mid, P);
        long nu_vn = valuation(v_at(n), P);
        long nu_phi = valuation(ctx.phi_val, P);
        if (nu_conj != nu_un) ++eq_viol;
        if (nu_vn < nu_mid) ++c1_viol;
        if (nu_mid < nu_un) ++c2_viol;
        if (nu_un < nu_phi) ++c3_viol;
        bd.sum_vn.add(p, nu_vn);

        DpEntry entry;
        entry.p = p;
        entry.nu_v_n = nu_vn;
        unsigned long hits = 0;
        for (long d : divs) {
            long nu_vd = valuation(v_at(static_cast<unsigned long>(d)), P);
            if (nu_vd > 0) {
                ++hits;
                if (entry.ord == 0) {
                    entry.ord = static_cast<unsigned long>(d);
                    entry.nu_v_ord = nu_vd;
                }
            }
        }
        /* every divisor multiple of ord hits; any other pattern breaks uniqueness */
        unsigned long expect = 0;
        if (entry.ord != 0)
            for (long d : divs)
                if (static_cast<unsigned long>(d) % entry.ord == 0) ++expect;
        if (entry.ord == 0 || hits != expect) {
            ++dp_viol;
            continue;
        }
        entry.d_p = n / entry.ord;
        bd.sum_vord.add(p, entry.nu_v_ord);
        Trool big = certify([&](long prec) {
            return certainly_le(Interval::exact(BigInt(tau_n), prec) *
                                    log(Interval::exact(BigInt(static_cast<long>(n)), prec)),
                                Interval::exact(BigInt(static_cast<long>(entry.d_p)), prec));
        });
        if (big == Trool::True) {
            bd.sum_bigdp.add(p, entry.nu_v_ord);
        } else {
            ++bd.curly_p_prime_count;
            bd.sum_smalldp.add(p, entry.nu_v_ord);
            if (!mod(p * p - 1, BigInt(static_cast<long>(n))).is_zero()) ++sq_viol;
        }
        bd.dp.push_back(entry);
    }

    for (unsigned long m = 1; m <= 7; ++m) {
        FieldElement phim = eval_cyclotomic(m, beta);
        for (std::size_t i = 0; i < bd.curly_p.size(); ++i)
            bd.sum_seven.add(bd.curly_p[i], valuation(phim, inert_ideals[i]));
    }

    const long members = static_cast<long>(bd.curly_p.size());
    bd.rows.push_back(count_row("beta.eq", eq_viol, members, true));
    bd.rows.push_back(count_row("beta.chain.1", c1_viol, members, true));
    bd.rows.push_back(count_row("beta.chain.2", c2_viol, members, true));
    bd.rows.push_back(count_row("beta.chain.3", c3_viol, members, true));
    bd.rows.push_back(count_row("dp.unique", dp_viol, members, true));

    BigInt proddiv(1);
    for (long d : divs) proddiv *= BigInt(d);
    const Interval& h = ctx.h;
    auto ln_of = [&](long v, long prec) { return log(Interval::exact(BigInt(v), prec)); };

    bd.rows.push_back(
        exact_log_row("eq17", bd.sum_vn.prod, bd.sum_vord.prod * proddiv * bd.sum_seven.prod,
                      true));
    bd.rows.push_back(exact_log_row(
        "eq18", proddiv, pow(BigInt(static_cast<long>(n)), static_cast<unsigned long>(tau_n)),
        true));
    bd.rows.push_back(demote(le_row(
                                 "eq19",
                                 [&](long prec) {
                                     Interval rhs = log(Interval::exact(BigInt(2), prec)) +
                                                    h * (2 * static_cast<long>(n));
                                     return std::pair{bd.sum_vn.value(prec), rhs};
                                 },
                                 ctx.gamma_integral),
                             ctx.gamma_integral,
                             "derivation needs integral gamma; evaluated only"));
    bd.rows.push_back(demote(le_row(
                                 "eq20",
                                 [&](long prec) {
                                     Interval rhs =
                                         log(Interval::exact(BigInt(2), prec)) * 7 + h * 56;
                                     return std::pair{bd.sum_seven.value(prec), rhs};
                                 },
                                 ctx.gamma_integral),
                             ctx.gamma_integral,
                             "derivation needs integral gamma; evaluated only"));
    if (n >= 2)
        bd.rows.push_back(demote(le_row(
                                     "bigdp",
                                     [&](long prec) {
                                         Interval ln = ln_of(static_cast<long>(n), prec);
                                         Interval rhs =
                                             h * (2 * static_cast<long>(n)) / ln +
                                             Interval::exact(BigInt(tau_n), prec) *
                                                 log(Interval::exact(BigInt(2), prec));
                                         return std::pair{bd.sum_bigdp.value(prec), rhs};
                                     },
                                     ctx.gamma_integral),
                                 ctx.gamma_integral,
                                 "derivation needs integral gamma; evaluated only"));
    else
        bd.rows.push_back(vacuous_row("bigdp", "rhs undefined at n = 1", false));
    /* Σ_{𝒫′} ν_p(v_{n/d_p}) log p ≥ 0.1·φ(n)·h(γ): valid only past n₀ */
    bd.rows.push_back(detail::le_row(
        "smalldlow",
        [&](long prec) {
            return std::pair{Interval::exact(BigRat(phi_n, 10), prec) * h,
                             bd.sum_smalldp.value(prec)};
        },
        false));
    if (n >= 3) {
        bd.rows.push_back(le_row(
            "smalldupb",
            [&](long prec) {
                return std::pair{Interval::exact(BigInt(bd.small_divisor_count), prec),
                                 bhl_count_bound(n, 70, prec)};
            },
            false));
        bd.rows.push_back(le_row(
            "carppp",
            [&](long prec) {
                Interval rhs =
                    (Interval::exact(BigRat(ctx.P, BigInt(static_cast<long>(n))), prec) +
                     Interval::exact(1L, prec)) *
                    bhl_count_bound(n, 80, prec);
                return std::pair{Interval::exact(BigInt(bd.curly_p_prime_count), prec), rhs};
            },
            false));
    } else {
        bd.rows.push_back(vacuous_row("smalldupb", "needs n >= 3", false));
        bd.rows.push_back(vacuous_row("carppp", "needs n >= 3", false));
    }
    bd.rows.push_back(count_row("pprime.sq", sq_viol, bd.curly_p_prime_count, false));
    {
        bool met = n >= 3 && !bd.dp.empty();
        if (met) {
            long max_nu_vn = 0;
            for (const DpEntry& e : bd.dp) max_nu_vn = std::max(max_nu_vn, e.nu_v_n);
            bd.rows.push_back(le_row(
                "padicofb",
                [&](long prec) {
                    Interval ln = ln_of(static_cast<long>(n), prec);
                    Interval rhs = Interval::exact(ctx.P, prec) * 2 *
                                   exp(-(Interval::exact(BigRat(5, 10000), prec) * ln / log(ln))) *
                                   h * ln;
                    return std::pair{Interval::exact(BigInt(max_nu_vn), prec), rhs};
                },
                false));
        } else {
            bd.rows.push_back(vacuous_row("padicofb", "needs n >= 3 and nonempty table", false));
        }
    }
    {
        bool met = n >= 3 && ctx.P >= 2 && bd.curly_p_prime_count > 0;
        if (met)
            bd.rows.push_back(le_row(
                "smalldup",
                [&](long prec) {
                    Interval ln = ln_of(static_cast<long>(n), prec);
                    Interval lp = log(Interval::exact(ctx.P, prec));
                    Interval rhs = Interval::exact(ctx.P, prec) * 2 *
                                   exp(-(Interval::exact(BigRat(5, 10000), prec) * ln / log(ln))) *
                                   h * lp * ln * bd.curly_p_prime_count;
                    return std::pair{bd.sum_smalldp.value(prec), rhs};
                },
                false));
        else
            bd.rows.push_back(
                vacuous_row("smalldup", "needs n >= 3, P >= 2, nonempty P-prime set", false));
    }
    {
        bool met = n >= 3 && ctx.P >= 2;
        if (met)
            bd.rows.push_back(le_row(
                "sec323.final",
                [&](long prec) {
                    Interval ln = ln_of(static_cast<long>(n), prec);
                    Interval lhs =
                        Interval::exact(BigInt(static_cast<long>(n)), prec) *
                        Interval::exact(BigInt(static_cast<long>(n)), prec) *
                        exp(Interval::exact(BigRat(4, 10000), prec) * ln / log(ln));
                    Interval rhs = Interval::exact(ctx.P, prec) * Interval::exact(ctx.P, prec) *
                                   log(Interval::exact(ctx.P, prec)) * 80;
                    return std::pair{lhs, rhs};
                },
                false));
        else
            bd.rows.push_back(vacuous_row("sec323.final", "needs n >= 3 and P >= 2", false));
    }
    return bd;
}

}  // namespace detail

/* the conjugate-quotient chain as a standalone operation */
inline BetaData beta_chain(const FieldElement& g, unsigned long n, const FactorOptions& opt = {}) {
    if (g.field().degree() != 2)
        throw DegreeMismatch("beta_chain: needs a genuine quadratic element");
    if (g.is_zero()) throw ZeroElement("beta_chain: zero element");
    if (is_root_of_unity(g)) throw RootOfUnityAtN("beta_chain: γ is a root of unity");
    if (n == 0) throw std::domain_error("beta_chain: n must be positive");
    FieldElement phi_val = eval_cyclotomic(n, g);
    Interval h = height(g);
    detail::DivisorScanData ds = detail::divisor_scan(g, n, opt);
    PResult pr = compute_P(g, n, opt);
    detail::BetaCtx ctx{g, n, phi_val, h, pr.P, ds.primes, to_integral(g).c.is_one()};
    return detail::beta_chain_impl(ctx);
}

struct ProofLedger {
    std::string gamma;
    unsigned long n = 0;
    int degree = 1;
    Interval h_gamma = Interval::exact(0L);
    Interval h_phi = Interval::exact(0L);
    Interval arch0 = Interval::exact(0L); /* −log⁻|Φ_n(γ)| at each embedding */
    Interval arch1 = Interval::exact(0L);
    LogShadow sp, snp, sp1, sp2;
    BigInt P = BigInt(1);
    bool p_exact = true;
    std::string witness;
    BigInt P_un = BigInt(1);
    bool p_un_exact = true;
    std::string case_tag = "neither"; /* which of the Σ_p1/Σ_p2 halves carries 0.4·φ(n)·h(γ) */
    bool gamma_integral = true;
    bool has_beta = false;
    BetaData beta;
    std::vector<PhiPrimeRow> primes;
    std::vector<std::string> support_anomalies;
    std::vector<LedgerRow> rows;

    const LedgerRow* row(std::string_view id) const {
        for (const LedgerRow& r : rows)
            if (r.id == id) return &r;
        return nullptr;
    }
    bool asserted_pass() const {
        for (const LedgerRow& r : rows)
            if (r.asserted && r.verdict == Verdict::Fails) return false;
        return true;
    }
};

struct LedgerOptions {
    FactorOptions factor;
    bool with_beta = true;
    long pi_sieve_cap = 2000000; /* π(P; n, 1) computed only for P below this */
};

inline ProofLedger build_ledger(const FieldElement& g, unsigned long n,
                                const LedgerOptions& lopt = {}) {
    if (g.is_zero()) throw ZeroElement("build_ledger: zero element");
    if (is_root_of_unity(g)) throw RootOfUnityAtN("build_ledger: γ is a root of unity");
    if (n == 0) throw std::domain_error("build_ledger: n must be positive");

    ProofLedger L;
    const QuadraticField& K = g.field();
    const long dK = K.degree();
    L.gamma = g.str();
    L.n = n;
    L.degree = static_cast<int>(dK);
    L.gamma_integral = to_integral(g).c.is_one();

    FieldElement phi_val = eval_cyclotomic(n, g);
    L.h_gamma = height(g);
    L.h_phi = height(phi_val);

    const long qprec = 192;
    L.arch0 = -log_minus(abs_embedding(phi_val, 0, qprec));
    L.arch1 = dK == 2 ? -log_minus(abs_embedding(phi_val, 1, qprec))
                      : Interval::exact(0L, qprec);

    Factorization fn = factor(BigInt(static_cast<long>(n)));
    AfValues af = arith_functions(fn);
    const long phi_n = af.phi.to_long();
    const long two_omega = 1L << af.omega;
    std::vector<long> nq;
    for (const auto& [q, e] : fn.primes) {
        (void)e;
        nq.push_back(q.to_long());
    }

    /* finite places of Φ_n(γ), classified by primitivity of the underlying ideal */
    FieldElement un = pow_minus_one(g, n);
    BigInt num = abs(phi_val.norm().num());
    Factorization fphi = num.is_one() ? Factorization{} : factor(num, lopt.factor);
    L.p_exact = fphi.complete;
    long prim_total = 0, prim_viol = 0, nonprim_total = 0, nonprim_viol = 0;
    long nonprim_applicable = 0;
    bool any_prim_f1 = false, any_prim_f2 = false;
    for (const auto& [p, e] : fphi.primes) {
        (void)e;
        for (const PrimeIdeal& P : split_prime(K, p)) {
            long nu = valuation(phi_val, P);
            if (nu < 1) continue;
            if (valuation(g, P) != 0) {
                L.support_anomalies.push_back(P.name());
                continue;
            }
            PhiPrimeRow row;
            row.ideal = P.name();
            row.p = p;
            row.f = P.residue_degree();
            row.e = P.ramification();
            row.nu = nu;
            row.primitive = true;
            for (long q : nq)
                if (valuation(pow_minus_one(g, n / static_cast<unsigned long>(q)), P) > 0) {
                    row.primitive = false;
                    break;
                }
            long w = nu * row.f;
            if (row.primitive) {
                L.sp.add(p, w);
                (row.f == 1 ? L.sp1 : L.sp2).add(p, w);
                (row.f == 1 ? any_prim_f1 : any_prim_f2) = true;
                ++prim_total;
                BigInt Np = P.ideal_norm();
                bool congruent = mod(Np - 1, BigInt(static_cast<long>(n))).is_zero();
                if (!congruent || Np < BigInt(static_cast<long>(n)) + 1) ++prim_viol;
            } else {
                L.snp.add(p, w);
                ++nonprim_total;
                if (n >= (dK == 2 ? 8u : 4u)) {
                    ++nonprim_applicable;
                    if (nu > valuation_of_integer(BigInt(static_cast<long>(n)), P)) ++nonprim_viol;
                }
            }
            if (row.p > L.P) {
                L.P = row.p;
                L.witness = row.ideal;
            }
            L.primes.push_back(std::move(row));
        }
    }

    detail::DivisorScanData ds = detail::divisor_scan(g, n, lopt.factor);
    L.P_un = ds.p_un;
    L.p_un_exact = ds.complete;

    const Interval& hg = L.h_gamma;
    const Interval& hphi = L.h_phi;
    auto arch_sum = [&](long prec) {
        Interval a = -log_minus(abs_embedding(phi_val, 0, prec));
        if (dK == 2) a = a - log_minus(abs_embedding(phi_val, 1, prec));
        return a;
    };
    auto ln_n = [&](long prec) { return log(Interval::exact(BigInt(static_cast<long>(n)), prec)); };
    const BigInt c7 = BigInt(64) * pow(BigInt(10), 14);
    const BigInt c9 = pow(BigInt(10), 16);

    L.rows.push_back(detail::eq_row(
        "eq6",
        [&](long prec) {
            Interval lhs = hphi * dK;
            Interval rhs = arch_sum(prec) + L.sp.value(prec) + L.snp.value(prec);
            return std::pair{lhs, rhs};
        },
        true));
    L.rows.push_back(detail::demote(detail::le_row(
                                        "eq7",
                                        [&](long prec) {
                                            return std::pair{arch_sum(prec),
                                                             Interval::exact(c7, prec) * hg *
                                                                 two_omega * ln_n(prec)};
                                        },
                                        n >= 2),
                                    n >= 2, "printed log n vanishes at n = 1"));
    L.rows.push_back(detail::demote(
        detail::exact_log_row("eq8", L.snp.prod,
                              BigInt(static_cast<long>(n)) * BigInt(static_cast<long>(n)),
                              n >= (dK == 2 ? 8u : 4u)),
        n >= (dK == 2 ? 8u : 4u), "needs n >= 2^(d+1)"));
    L.rows.push_back(detail::demote(detail::le_row(
                                        "eq9",
                                        [&](long prec) {
                                            Interval rhs = Interval::exact(c9, prec) * hg *
                                                               two_omega * ln_n(prec) +
                                                           L.sp.value(prec) / 2 + ln_n(prec);
                                            return std::pair{hphi, rhs};
                                        },
                                        n >= 2),
                                    n >= 2, "printed log n vanishes at n = 1"));
    L.rows.push_back(detail::le_row(
        "eq10",
        [&](long prec) {
            Interval lhs = hg * phi_n -
                           log(Interval::pi(prec) * static_cast<long>(n)) * two_omega;
            return std::pair{lhs, hphi};
        },
        true));
    L.rows.push_back(detail::demote(
        detail::le_row(
            "eq11",
            [&](long prec) {
                Interval lhs = hg * phi_n -
                               log(Interval::pi(prec) * static_cast<long>(n)) * two_omega -
                               Interval::exact(c9, prec) * hg * two_omega * ln_n(prec) -
                               ln_n(prec);
                return std::pair{lhs, L.sp.value(prec) / 2};
            },
            n >= 2),
        n >= 2, "printed log n vanishes at n = 1"));
    {
        LedgerRow r;
        r.id = "sump.split";
        r.lhs = L.sp.value(qprec);
        r.rhs = L.sp1.value(qprec) + L.sp2.value(qprec);
        bool ok = L.sp.prod == L.sp1.prod * L.sp2.prod;
        r.verdict = ok ? Verdict::Holds : Verdict::Fails;
        r.margin = 0;
        r.asserted = true;
        if (!ok) r.note = "exact shadow products differ";
        L.rows.push_back(std::move(r));
    }
    L.rows.push_back(detail::count_row("prop22.1", prim_viol, prim_total, true));
    {
        LedgerRow r = detail::count_row("prop22.2", nonprim_viol, nonprim_applicable, true);
        if (nonprim_total > 0 && nonprim_applicable == 0) {
            r.verdict = Verdict::SkippedHypothesis;
            r.note = "needs n >= 2^(d+1)";
        }
        L.rows.push_back(std::move(r));
    }
    {
        LedgerRow r;
        if (any_prim_f1)
            r = detail::le_row(
                "p.lower",
                [&](long prec) {
                    return std::pair{Interval::exact(BigInt(static_cast<long>(n)) + 1, prec),
                                     Interval::exact(L.P, prec)};
                },
                true);
        else if (any_prim_f2)
            r = detail::le_row(
                "p.lower",
                [&](long prec) {
                    return std::pair{Interval::exact(BigInt(static_cast<long>(n)) + 1, prec),
                                     Interval::exact(L.P * L.P, prec)};
                },
                true);
        else
            r = detail::vacuous_row("p.lower", "no primitive ideal divides the cyclotomic value",
                                    true);
        if (any_prim_f2 && !any_prim_f1) r.note = "f = 2 branch: compares (n+1) with P^2";
        L.rows.push_back(std::move(r));
    }
    L.rows.push_back(detail::le_row(
        "pun.ge.pphi",
        [&](long prec) {
            return std::pair{Interval::exact(L.P, prec), Interval::exact(L.P_un, prec)};
        },
        true));

    LedgerRow eq12 = detail::le_row(
        "eq12",
        [&](long prec) {
            return std::pair{Interval::exact(BigRat(phi_n * 4, 5), prec) * hg, L.sp.value(prec)};
        },
        false);
    LedgerRow eq13 = detail::le_row(
        "eq13",
        [&](long prec) {
            return std::pair{Interval::exact(BigRat(phi_n * 2, 5), prec) * hg, L.sp1.value(prec)};
        },
        false);
    LedgerRow eq14 = detail::le_row(
        "eq14",
        [&](long prec) {
            return std::pair{Interval::exact(BigRat(phi_n * 2, 5), prec) * hg, L.sp2.value(prec)};
        },
        false);
    bool c13 = eq13.verdict == Verdict::Holds, c14 = eq14.verdict == Verdict::Holds;
    L.case_tag = c13 && c14 ? "both" : c13 ? "13" : c14 ? "14" : "neither";
    bool eq12_holds = eq12.verdict == Verdict::Holds;
    L.rows.push_back(std::move(eq12));
    L.rows.push_back(std::move(eq13));
    L.rows.push_back(std::move(eq14));
    L.rows.push_back(detail::demote(detail::le_row(
                                        "case13or14",
                                        [&](long prec) {
                                            Interval lhs =
                                                Interval::exact(BigRat(phi_n * 2, 5), prec) * hg;
                                            return std::pair{
                                                lhs, max(L.sp1.value(prec), L.sp2.value(prec))};
                                        },
                                        eq12_holds),
                                    eq12_holds, "disjunction asserted only when eq12 holds"));
    {
        bool met = n >= 3;
        LedgerRow r;
        if (met)
            r = detail::le_row(
                "mainr",
                [&](long prec) {
                    return std::pair{main_bound(n, prec), Interval::exact(L.P, prec)};
                },
                false, true);
        else
            r = detail::vacuous_row("mainr", "needs n >= 3", false);
        r.asserted = false;
        if (!L.p_exact) r.note = "P is a lower bound (factorization budget)";
        L.rows.push_back(std::move(r));
    }

    /* case-(13) machinery: π(P; n, 1) by sieve when P is small enough */
    {
        std::optional<long> pi_count;
        if (L.P >= 2 && L.P <= BigInt(lopt.pi_sieve_cap)) {
            long limit = L.P.to_long();
            long cnt = 0;
            for (std::uint32_t q : sieve_primes(static_cast<std::uint32_t>(limit)))
                if (q % n == 1 % n) ++cnt;
            pi_count = cnt;
        }
        if (pi_count) {
            L.rows.push_back(detail::le_row(
                "pi.trivial",
                [&](long prec) {
                    return std::pair{Interval::exact(BigInt(*pi_count), prec),
                                     Interval::exact(BigRat(L.P, BigInt(static_cast<long>(n))),
                                                     prec)};
                },
                true));
            bool met = n >= 3;
            LedgerRow r;
            if (met)
                r = detail::le_row(
                    "eq15",
                    [&](long prec) {
                        Interval ln = ln_n(prec);
                        Interval rhs = Interval::exact(BigInt(*pi_count), prec) *
                                       Interval::exact(L.P, prec) *
                                       exp(-(Interval::exact(BigRat(1, 1000), prec) * ln /
                                             log(ln))) *
                                       hg * ln * log(Interval::exact(L.P, prec));
                        return std::pair{L.sp1.value(prec), rhs};
                    },
                    false);
            else
                r = detail::vacuous_row("eq15", "needs n >= 3", false);
            L.rows.push_back(std::move(r));
        } else {
            L.rows.push_back(detail::vacuous_row(
                "pi.trivial", "P outside the sieve range; count not computed", true));
            L.rows.push_back(detail::vacuous_row("eq15", "P outside the sieve range", false));
        }
    }
    {
        bool met = n >= 3;
        LedgerRow r;
        if (met)
            r = detail::le_row(
                "eq16",
                [&](long prec) {
                    Interval ln = ln_n(prec);
                    Interval rhs = Interval::exact(L.P, prec) * Interval::exact(L.P, prec) * 2 *
                                   exp(-(Interval::exact(BigRat(1, 1000), prec) * ln / log(ln))) *
                                   hg * ln * ln / static_cast<long>(n);
                    return std::pair{L.sp1.value(prec), rhs};
                },
                false);
        else
            r = detail::vacuous_row("eq16", "needs n >= 3", false);
        L.rows.push_back(std::move(r));
    }

    if (L.P > 1) {
        for (const PrimeIdeal& P : split_prime(K, L.P))
            if (P.name() == L.witness) {
                auto [ra, rb] = check_valuation_theorems(g, n, P);
                ra.note = ra.note.empty() ? "at the P-witness ideal"
                                          : ra.note + "; at the P-witness ideal";
                rb.note = rb.note.empty() ? "at the P-witness ideal"
                                          : rb.note + "; at the P-witness ideal";
                L.rows.push_back(std::move(ra));
                L.rows.push_back(std::move(rb));
                break;
            }
    } else {
        L.rows.push_back(detail::vacuous_row("thm2.1", "no prime divides the cyclotomic value",
                                             false));
        L.rows.push_back(detail::vacuous_row("thm2.2", "no prime divides the cyclotomic value",
                                             false));
    }

    if (dK == 2 && lopt.with_beta) {
        L.has_beta = true;
        detail::BetaCtx ctx{g, n, phi_val, L.h_gamma, L.P, ds.primes, L.gamma_integral};
        L.beta = detail::beta_chain_impl(ctx);
        FieldElement beta = g.conjugate() / g;
        if (abs(g.norm()) == BigRat(1)) {
            /* β = N(γ)/γ², so both sides are the same number; no gap to certify */
            LedgerRow r;
            r.id = "hbeta";
            r.lhs = height(beta);
            r.rhs = hg * 2;
            r.verdict = Verdict::Holds;
            r.margin = 0;
            r.asserted = true;
            r.note = "equality: beta is gamma^(-2) up to sign";
            L.rows.push_back(std::move(r));
        } else {
            L.rows.push_back(detail::le_row(
                "hbeta",
                [&](long prec) {
                    (void)prec;
                    return std::pair{height(beta), hg * 2};
                },
                true));
        }
        bool chain_ok = true;
        for (const char* id : {"beta.eq", "beta.chain.1", "beta.chain.2", "beta.chain.3"})
            for (const LedgerRow& r : L.beta.rows)
                if (r.id == id && r.verdict == Verdict::Fails) chain_ok = false;
        for (LedgerRow& r : L.beta.rows) L.rows.push_back(r);
        bool eq14_holds = false;
        if (const LedgerRow* r = L.row("eq14")) eq14_holds = r->verdict == Verdict::Holds;
        bool met = eq14_holds && chain_ok && !L.beta.torsion;
        L.rows.push_back(detail::demote(detail::le_row(
                                            "norm1lowb",
                                            [&](long prec) {
                                                Interval lhs =
                                                    Interval::exact(BigRat(phi_n, 5), prec) * hg;
                                                return std::pair{lhs, L.beta.sum_vn.value(prec)};
                                            },
                                            met),
                                        met, "asserted only under eq14 with an intact chain"));
    }

    /* an exhausted factor budget truncates the prime support; rows that sum
       over it keep their computed verdict but are no longer asserted */
    if (!L.p_exact || !L.p_un_exact) {
        static const std::set<std::string> phi_side{"eq6", "eq8", "eq9", "eq11", "case13or14"};
        static const std::set<std::string> scan_side{"pun.ge.pphi", "eq17",  "eq18",     "eq19",
                                                     "eq20",        "bigdp", "norm1lowb"};
        for (LedgerRow& r : L.rows) {
            bool hit = (!L.p_exact && (phi_side.count(r.id) || scan_side.count(r.id))) ||
                       (!L.p_un_exact && scan_side.count(r.id));
            if (hit && r.asserted) {
                r.asserted = false;
                if (r.note.empty())
                    r.note = "factorization budget exhausted; prime support may be incomplete";
            }
        }
    }
    return L;
}

/* Σ_{inert p, γ a p-unit} ν_p(β^m − 1)·log p ≤ log 2 + 2m·h(γ), standalone */
inline LedgerRow check_eq19(const FieldElement& g, unsigned long m, const FactorOptions& opt = {}) {
    if (g.field().degree() != 2)
        throw DegreeMismatch("check_eq19: needs a genuine quadratic element");
    if (g.is_zero()) throw ZeroElement("check_eq19: zero element");
    if (is_root_of_unity(g)) throw RootOfUnityAtN("check_eq19: γ is a root of unity");
    if (m == 0) throw std::domain_error("check_eq19: m must be positive");
    FieldElement beta = g.conjugate() / g;
    if (is_root_of_unity(beta))
        return detail::vacuous_row("eq19", "beta is a root of unity", false);
    FieldElement vm = pow_minus_one(beta, m);
    LogShadow lhs;
    BigInt num = abs(vm.norm().num());
    if (!num.is_one()) {
        Factorization f = factor(num, opt);
        if (!f.complete) throw std::runtime_error("check_eq19: factorization budget exhausted");
        for (const auto& [p, e] : f.primes) {
            (void)e;
            if (kronecker(g.field().discriminant(), p) != -1) continue;
            PrimeIdeal P = split_prime(g.field(), p)[0];
            if (valuation(g, P) != 0) continue;
            lhs.add(p, valuation(vm, P));
        }
    }
    Interval h = height(g);
    bool integral = to_integral(g).c.is_one();
    return detail::demote(detail::le_row(
                              "eq19",
                              [&](long prec) {
                                  Interval rhs = log(Interval::exact(BigInt(2), prec)) +
                                                 h * (2 * static_cast<long>(m));
                                  return std::pair{lhs.value(prec), rhs};
                              },
                              integral),
                          integral, "derivation needs integral gamma; evaluated only");
}

/* Σ_{m|n} log m ≤ τ(n)·log n, exact on both sides */
inline LedgerRow check_eq18(unsigned long n) {
    if (n == 0) throw std::domain_error("check_eq18: n must be positive");
    std::vector<long> divs = divisors(static_cast<long>(n));
    BigInt proddiv(1);
    for (long d : divs) proddiv *= BigInt(d);
    long tau_n = static_cast<long>(divs.size());
    /* Π_{m|n} m ≤ n^τ(n) decided exactly; intervals only for the recorded margin */
    BigInt rhs_exact = pow(BigInt(static_cast<long>(n)), static_cast<unsigned long>(tau_n));
    LedgerRow row;
    row.id = "eq18";
    row.asserted = true;
    const long prec = 192;
    row.lhs = log(Interval::exact(proddiv, prec));
    row.rhs = Interval::exact(BigInt(tau_n), prec) *
              log(Interval::exact(BigInt(static_cast<long>(n)), prec));
    row.margin = (row.rhs - row.lhs).lower();
    row.verdict = proddiv <= rhs_exact ? Verdict::Holds : Verdict::Fails;
    return row;
}

struct ScanRow {
    unsigned long n = 0;
    BigInt P = BigInt(1);
    bool exact = true;
    bool bound_defined = false;
    Interval bound = Interval::exact(0L);
    double ratio = 0;
    unsigned long primitive_f1 = 0;
    unsigned long primitive_f2 = 0;
    bool asserted_pass = true;
    std::vector<std::string> failing;
    std::string error;
};

inline ScanRow scan_one(const FieldElement& g, unsigned long n, const LedgerOptions& lopt = {}) {
    ScanRow row;
    row.n = n;
    try {
        ProofLedger L = build_ledger(g, n, lopt);
        row.P = L.P;
        row.exact = L.p_exact;
        if (n >= 3) {
            row.bound_defined = true;
            row.bound = main_bound(n);
            row.ratio = (Interval::exact(L.P, 192) / row.bound).mid();
        }
        for (const PhiPrimeRow& pr : L.primes) {
            if (!pr.primitive) continue;
            (pr.f == 1 ? row.primitive_f1 : row.primitive_f2) += 1;
        }
        row.asserted_pass = L.asserted_pass();
        for (const LedgerRow& r : L.rows)
            if (r.asserted && r.verdict == Verdict::Fails) row.failing.push_back(r.id);
    } catch (const std::exception& ex) {
        row.error = ex.what();
        row.asserted_pass = false;
    }
    return row;
}

/*
 * Batch driver: ledgers are independent given the shared factor cache, so
 * workers pull n values from an atomic counter; rows are buffered and emitted
 * in n-order after the pool drains.
 */
inline std::vector<ScanRow> scan(const FieldElement& g, unsigned long lo, unsigned long hi,
                                 const std::function<void(const ScanRow&)>& emit = {},
                                 const LedgerOptions& lopt = {}, unsigned jobs = 1) {
    std::vector<ScanRow> table;
    if (hi < lo) return table;
    const unsigned long count = hi - lo + 1;
    std::vector<std::optional<ScanRow>> slots(count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (jobs == 1) {
        for (unsigned long i = 0; i < count; ++i) slots[i] = scan_one(g, lo + i, lopt);
    } else {
        std::atomic<unsigned long> next{0};
        auto work = [&]() {
            for (;;) {
                unsigned long i = next.fetch_add(1);
                if (i >= count) return;
                slots[i] = scan_one(g, lo + i, lopt);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    table.reserve(count);
    for (unsigned long i = 0; i < count; ++i) {
        table.push_back(std::move(*slots[i]));
        if (emit) emit(table.back());
    }
    return table;
}

}  // namespace quadlucas
