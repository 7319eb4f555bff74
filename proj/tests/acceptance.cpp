/*
 * Acceptance gate: ten criteria, one PASS/FAIL line each.  Exit status is
 * the number of failed criteria.  Tolerances are pinned here, not read from
 * anywhere else.
 */

#include <quadlucas/verifier.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

using namespace quadlucas;

namespace {

struct Outcome {
    bool ok = true;
    long violations = 0;
    std::string detail;

    void fail(const std::string& what) {
        ok = false;
        ++violations;
        if (detail.empty()) detail = what;
    }
};

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, const Outcome& o, double secs) {
    std::printf("%s  criterion %2d: %s  [%.1f s]", o.ok ? "PASS" : "FAIL", idx, name, secs);
    if (!o.ok)
        std::printf("  (%ld violation%s; first: %s)", o.violations, o.violations == 1 ? "" : "s",
                    o.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

const std::vector<const char*> kHeightCorpus = {
    "1+1*sqrt(2)",      "1/2+1/2*sqrt(5)", "2+1*sqrt(3)", "3+1*sqrt(2)",     "sqrt(2)",
    "3/4+1/4*sqrt(-7)", "1+1*sqrt(-1)",    "2+1*sqrt(-3)", "1/2+1/2*sqrt(2)", "2",
    "3/2",              "-2",              "5/2+1/2*sqrt(5)"};

/* quadratic + rational, unit at all but finitely many ideals, spanning
   imaginary, non-integral, and degree-1 cases */
const std::vector<const char*> kGridCorpus = {"1+1*sqrt(2)",      "1/2+1/2*sqrt(5)",
                                              "2+1*sqrt(3)",      "3/4+1/4*sqrt(-7)",
                                              "1/2+1/2*sqrt(2)",  "2"};

const std::vector<const char*> kLedgerCorpus = {"1+1*sqrt(2)", "1/2+1/2*sqrt(5)", "(1,-3,1)+",
                                                "sqrt(2)",     "1/2+1/2*sqrt(-7)", "2"};

std::vector<long> primes_upto(long bound) {
    std::vector<long> out;
    std::vector<bool> comp(bound + 1, false);
    for (long p = 2; p <= bound; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= bound; q += p) comp[q] = true;
    }
    return out;
}

/* 1. Π_{d|n} Φ_d(x) = x^n − 1 exactly, n ≤ 500, < 30 s */
Outcome criterion1(double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    for (long n = 1; n <= 500; ++n) {
        ZPoly prod = ZPoly::constant(BigInt(1));
        for (long d : divisors(n)) prod = prod * cyclotomic(static_cast<unsigned long>(d));
        if (!(prod == ZPoly::xn_minus_1(static_cast<std::size_t>(n))))
            o.fail("product differs from x^n-1 at n=" + std::to_string(n));
    }
    secs = secs_since(t0);
    if (secs >= 30.0) o.fail("runtime " + std::to_string(secs) + " s exceeds 30 s");
    return o;
}

/* 2. both height routes agree to certified width < 1e-9; h(x^n) = n h(x) */
Outcome criterion2(double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    for (const char* lit : kHeightCorpus) {
        FieldElement g = parse_element(lit);
        Interval a = Interval::exact(0L), b = Interval::exact(0L);
        for (long prec = 256; prec <= Interval::kPrecCeiling; prec *= 2) {
            a = height_valuation(g, prec);
            b = height_mahler(g, prec);
            if (a.width() < 1e-9 && b.width() < 1e-9) break;
        }
        if (!(a.width() < 1e-9 && b.width() < 1e-9))
            o.fail(std::string(lit) + ": route width above 1e-9");
        else if (!overlaps(a, b))
            o.fail(std::string(lit) + ": height routes disagree");

        Interval hg = height(g);
        for (unsigned long n = 1; n <= 20; ++n) {
            Interval hn = height(power(g, n));
            if (!overlaps(hn, hg * static_cast<long>(n)))
                o.fail(std::string(lit) + ": h(x^" + std::to_string(n) + ") != n h(x)");
        }
    }
    secs = secs_since(t0);
    return o;
}

/* 3. Σ_{𝔭|p} f ν_𝔭(x) = ν_p(N(x)), corpus × p ≤ 10^4, exact */
Outcome criterion3(const std::vector<long>& primes, double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    for (const char* lit : kHeightCorpus) {
        FieldElement g = parse_element(lit);
        BigRat N = g.norm();
        for (long p : primes) {
            long lhs = 0;
            for (const PrimeIdeal& P : split_prime(g.field(), BigInt(p)))
                lhs += P.residue_degree() * valuation(g, P);
            long rhs = rational_valuation(N, BigInt(p));
            if (lhs != rhs)
                o.fail(std::string(lit) + " p=" + std::to_string(p) + ": " +
                       std::to_string(lhs) + " != " + std::to_string(rhs));
        }
    }
    secs = secs_since(t0);
    return o;
}

/*
 * 4 + 5 share one pass over the grid corpus × n ≤ 200 × p ≤ 10^4.
 *
 * For every unit ideal we compute the two primary data both classifiers
 * reduce to: the multiplicative order (via residue_order) and the exact
 * divide set {k ≤ 200 : ν_𝔭(γ^k−1) > 0}.  Verdict equivalence is checked
 * for every n from these, and the classifier functions themselves are
 * anchored at the decisive indices (first division, the order, and a
 * strided sample of the empty case).
 */
struct GridOutcome {
    Outcome c4, c5;
};

GridOutcome criterion45(const std::vector<long>& primes, FactorCache& cache, double& secs) {
    auto t0 = Clock::now();
    GridOutcome out;
    FactorOptions fopt{30000, &cache};
    const unsigned long kN = 200;

    for (const char* lit : kGridCorpus) {
        FieldElement g = parse_element(lit);
        const QuadraticField& K = g.field();

        std::vector<FieldElement> u;
        u.reserve(kN + 1);
        u.push_back(g); /* placeholder at index 0 */
        for (unsigned long k = 1; k <= kN; ++k) u.push_back(pow_minus_one(g, k));

        std::vector<std::optional<FieldElement>> phi(kN + 1);
        auto phi_at = [&](unsigned long n) -> const FieldElement& {
            if (!phi[n]) phi[n] = eval_cyclotomic(n, g);
            return *phi[n];
        };

        long ideal_idx = 0;
        for (long p : primes) {
            for (const PrimeIdeal& P : split_prime(K, BigInt(p))) {
                if (valuation(g, P) != 0) continue;
                ++ideal_idx;

                std::vector<bool> divides(kN + 1, false);
                unsigned long first = 0;
                for (unsigned long k = 1; k <= kN; ++k)
                    if (valuation(u[k], P) > 0) {
                        divides[k] = true;
                        if (first == 0) first = k;
                    }

                BigInt ord = residue_order(g, P, fopt);
                long o = ord.fits_long() && ord <= BigInt(static_cast<long>(kN))
                             ? ord.to_long()
                             : 0; /* 0: order exceeds the grid */

                auto order_verdict = [&](unsigned long n) {
                    if (o == 0 || n % static_cast<unsigned long>(o) != 0)
                        return Primitivity::NotADivisor;
                    return n == static_cast<unsigned long>(o) ? Primitivity::Primitive
                                                              : Primitivity::NonPrimitive;
                };
                auto scan_verdict = [&](unsigned long n) {
                    if (!divides[n]) return Primitivity::NotADivisor;
                    return first == n ? Primitivity::Primitive : Primitivity::NonPrimitive;
                };

                std::string where = std::string(lit) + " ideal=" + P.name();
                for (unsigned long n = 1; n <= kN; ++n) {
                    Primitivity ov = order_verdict(n);
                    Primitivity sv = scan_verdict(n);
                    if (ov != sv) {
                        out.c4.fail(where + " n=" + std::to_string(n) + ": " +
                                    std::string(to_string(ov)) + " vs " + to_string(sv));
                        continue;
                    }
                    if (sv == Primitivity::Primitive) {
                        BigInt Np = P.ideal_norm();
                        bool congruent =
                            mod(Np - BigInt(1), BigInt(static_cast<long>(n))).is_zero();
                        long nu_phi = valuation(phi_at(n), P);
                        if (!congruent)
                            out.c5.fail(where + " n=" + std::to_string(n) + ": Np !== 1 mod n");
                        else if (nu_phi < 1)
                            out.c5.fail(where + " n=" + std::to_string(n) +
                                        ": primitive but nu(Phi_n)=0");
                    } else if (sv == Primitivity::NonPrimitive && n >= 8) {
                        long nu_phi = valuation(phi_at(n), P);
                        long nu_n = valuation_of_integer(BigInt(static_cast<long>(n)), P);
                        if (nu_phi > nu_n)
                            out.c5.fail(where + " n=" + std::to_string(n) + ": nu(Phi_n)=" +
                                        std::to_string(nu_phi) + " > nu(n)=" +
                                        std::to_string(nu_n));
                    }
                }

                /* anchor the actual classifier functions */
                std::vector<unsigned long> anchors;
                if (first > 0) anchors.push_back(first);
                if (o > 0) {
                    anchors.push_back(static_cast<unsigned long>(o));
                    if (2 * static_cast<unsigned long>(o) <= kN)
                        anchors.push_back(2 * static_cast<unsigned long>(o));
                }
                if (ideal_idx % 29 == 0) anchors.push_back(kN);
                for (unsigned long n : anchors) {
                    Primitivity a = classify_primitivity(g, n, P, fopt).verdict;
                    Primitivity b = classify_primitivity_scan(g, n, P).verdict;
                    if (a != order_verdict(n) || b != scan_verdict(n) || a != b)
                        out.c4.fail(where + " n=" + std::to_string(n) +
                                    ": classifier functions disagree with grid data");
                }
            }
        }
    }
    secs = secs_since(t0);
    return out;
}

/* 6. both cyclotomic height bounds, corpus × n ≤ 300 */
Outcome criterion6(double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    for (const char* lit : kHeightCorpus) {
        FieldElement g = parse_element(lit);
        for (unsigned long n = 1; n <= 300; ++n) {
            if (check_prop21_item1(g, n).verdict != Trool::True)
                o.fail(std::string(lit) + " n=" + std::to_string(n) + ": item 1 not certified");
            if (check_prop21_item2(g, n).verdict != Trool::True)
                o.fail(std::string(lit) + " n=" + std::to_string(n) + ": item 2 not certified");
        }
    }
    secs = secs_since(t0);
    return o;
}

/* 7. full ledgers over corpus × n ≤ 120 */
Outcome criterion7(FactorCache& cache, double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    LedgerOptions lopt;
    lopt.factor = FactorOptions{180000, &cache};

    for (const char* lit : kLedgerCorpus) {
        FieldElement g = parse_element(lit);
        for (unsigned long n = 1; n <= 120; ++n) {
            ProofLedger L = build_ledger(g, n, lopt);
            std::string where = std::string(lit) + " n=" + std::to_string(n);
            if (!L.p_exact || !L.p_un_exact) {
                o.fail(where + ": factor budget exhausted");
                continue;
            }
            if (!L.asserted_pass())
                for (const LedgerRow& r : L.rows)
                    if (r.asserted && r.verdict == Verdict::Fails)
                        o.fail(where + ": asserted row " + r.id + " fails");

            const LedgerRow* eq6 = L.row("eq6");
            if (!eq6 || eq6->verdict != Verdict::Holds)
                o.fail(where + ": eq6 does not hold");
            else if (eq6->lhs.width() + eq6->rhs.width() >= 1e-9)
                o.fail(where + ": eq6 interval width above 1e-9");

            if (n >= 8) {
                const LedgerRow* eq8 = L.row("eq8");
                if (!eq8 || eq8->verdict != Verdict::Holds || !eq8->asserted)
                    o.fail(where + ": eq8 not held");
            }

            for (const char* id : {"beta.eq", "beta.chain.1", "beta.chain.2", "beta.chain.3",
                                   "dp.unique", "eq17", "eq18", "eq19", "eq20", "bigdp"})
                if (const LedgerRow* r = L.row(id))
                    if (r->verdict == Verdict::Fails)
                        o.fail(where + ": " + id + " fails");
        }
    }
    secs = secs_since(t0);
    return o;
}

/* 8. arithmetic-function bounds: exhaustive sweep to 10^6, closed-form φ samples */
Outcome criterion8(double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    std::uint32_t bad = scan_af_bounds(3, 1000000);
    if (bad != 0) o.fail("omega/tau bound violated at n=" + std::to_string(bad));
    double sweep = secs_since(t0);
    if (sweep >= 120.0) o.fail("sweep took " + std::to_string(sweep) + " s, limit 120 s");

    struct Sample {
        const char* name;
        Factorization f;
    };
    std::vector<Sample> samples;
    auto make = [&](const char* name, std::vector<std::pair<long, unsigned long>> pe) {
        Factorization f;
        for (auto [p, e] : pe) f.primes[BigInt(p)] = e;
        samples.push_back({name, std::move(f)});
    };
    make("2^70", {{2, 70}});
    make("3^50", {{3, 50}});
    make("11^20", {{11, 20}});
    make("10^20", {{2, 20}, {5, 20}});
    make("10^27", {{2, 27}, {5, 27}});
    make("primorial(59)", {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1},
                           {23, 1}, {29, 1}, {31, 1}, {37, 1}, {41, 1}, {43, 1}, {47, 1},
                           {53, 1}, {59, 1}});
    {
        BigInt p = pow(BigInt(10), 10) + BigInt(19);
        if (!is_prime(p)) o.fail("10^10+19 unexpectedly composite");
        Factorization f;
        f.primes[p] = 2;
        samples.push_back({"(10^10+19)^2", std::move(f)});
    }
    static const BigInt kThreshold = pow(BigInt(10), 20);
    for (const Sample& s : samples) {
        BigInt n = s.f.magnitude();
        if (n < kThreshold) {
            o.fail(std::string(s.name) + " below 10^20; sample set is wrong");
            continue;
        }
        AfValues af = arith_functions(s.f);
        AfBoundsReport rep = check_af_bounds(n, af);
        if (rep.omega_ok != Trool::True || rep.tau_ok != Trool::True)
            o.fail(std::string(s.name) + ": omega/tau bound not certified");
        if (!rep.phi_evaluated || rep.phi_ok != Trool::True)
            o.fail(std::string(s.name) + ": phi lower bound not certified");
    }
    secs = secs_since(t0);
    return o;
}

/* 9. spot values against independent oracles */
Outcome criterion9(FactorCache& cache, double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    FactorOptions fopt{30000, &cache};

    FieldElement g1 = parse_element("1+1*sqrt(2)");
    PResult p3 = compute_P(g1, 3, fopt);
    if (!(p3.P == BigInt(7) && p3.exact)) o.fail("P(1+sqrt(2), 3) != 7");
    PResult p5 = compute_P(g1, 5, fopt);
    if (!(p5.P == BigInt(41) && p5.exact)) o.fail("P(1+sqrt(2), 5) != 41");

    /* Lucas numbers by the plain integer recurrence */
    FieldElement golden = parse_element("(1,-1,-1)+");
    BigInt l_prev(2), l_cur(1); /* L_0, L_1 */
    for (unsigned long n = 1; n <= 30; ++n) {
        if (n > 1) {
            BigInt next = l_cur + l_prev;
            l_prev = l_cur;
            l_cur = next;
        }
        BigInt sign = n % 2 == 0 ? BigInt(1) : BigInt(-1);
        BigRat expect(sign - l_cur + BigInt(1));
        if (!(pow_minus_one(golden, n).norm() == expect))
            o.fail("N(golden^" + std::to_string(n) + "-1) != (-1)^n - L_n + 1");
    }

    Factorization m11 = factor(BigInt(2047), fopt);
    if (!(m11.complete && !m11.primes.empty() && m11.primes.rbegin()->first == BigInt(89)))
        o.fail("largest prime of 2047 != 89");
    PResult p2 = compute_P(parse_element("2"), 11, fopt);
    if (!(p2.P == BigInt(89) && p2.exact)) o.fail("P(2^11-1) != 89");

    secs = secs_since(t0);
    return o;
}

/* 10. end-to-end CLI runs */
Outcome criterion10(const std::string& cache_path, double& secs) {
    auto t0 = Clock::now();
    Outcome o;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string base = std::string("'") + QUADLUCAS_CLI_PATH + "' ";
    std::string tail = " --jobs " + std::to_string(jobs) + " --cache '" + cache_path + "'";

    auto t_verify = Clock::now();
    int rc = std::system(
        (base + "verify --gamma \"1+1*sqrt(2)\" --n 3..100 --out /dev/null" + tail).c_str());
    double dt = secs_since(t_verify);
    bool exit0 = rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    if (!exit0) o.fail("verify 3..100 exited nonzero");
    if (dt >= 300.0) o.fail("verify 3..100 took " + std::to_string(dt) + " s, limit 300 s");

    std::string table = "/tmp/quadlucas-acceptance-table-" + std::to_string(::getpid()) + ".csv";
    rc = std::system(
        (base + "bound-table --gamma \"1+1*sqrt(2)\" --n 3..100 --out '" + table + "'" + tail)
            .c_str());
    if (!(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0))
        o.fail("bound-table 3..100 exited nonzero");
    std::ifstream in(table);
    std::string line;
    long rows = 0, inexact = 0;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        ++rows;
        if (line.size() < 4 || line.compare(line.size() - 4, 4, "true") != 0) ++inexact;
    }
    if (rows != 98) o.fail("bound-table emitted " + std::to_string(rows) + " rows, want 98");
    if (inexact != 0) o.fail(std::to_string(inexact) + " rows carry a budget flag");
    std::remove(table.c_str());

    secs = secs_since(t0);
    return o;
}

}  // namespace

int main() {
    std::string cache_path = "/tmp/quadlucas-acceptance-" + std::to_string(::getpid());
    std::remove(cache_path.c_str());
    FactorCache cache(cache_path);
    std::vector<long> primes = primes_upto(10000);

    int failures = 0;
    double secs = 0;
    auto run = [&](int idx, const char* name, Outcome o) {
        report(idx, name, o, secs);
        if (!o.ok) ++failures;
    };

    run(1, "cyclotomic product identity, n <= 500", criterion1(secs));
    run(2, "height route agreement and power scaling", criterion2(secs));
    run(3, "norm-valuation balance, corpus x p <= 10^4", criterion3(primes, secs));
    GridOutcome g45 = criterion45(primes, cache, secs);
    double grid_secs = secs;
    run(4, "primitivity oracle equivalence, n <= 200", g45.c4);
    secs = grid_secs;
    run(5, "primitive/non-primitive ideal laws on the same grid", g45.c5);
    run(6, "cyclotomic height bounds, corpus x n <= 300", criterion6(secs));
    run(7, "full proof ledgers, corpus x n <= 120", criterion7(cache, secs));
    run(8, "arithmetic-function growth bounds", criterion8(secs));
    run(9, "spot values against independent oracles", criterion9(cache, secs));
    run(10, "end-to-end CLI verify and bound-table", criterion10(cache_path, secs));

    std::remove(cache_path.c_str());
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
