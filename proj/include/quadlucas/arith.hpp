#pragma once

/*
 * Multiplicative arithmetic functions (phi, omega, tau), divisor machinery,
 * log conventions, and the certified bound checks on phi/omega/tau growth.
 */

#include <quadlucas/bigint.hpp>
#include <quadlucas/interval.hpp>
#include <quadlucas/primes.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace quadlucas {

struct AfValues {
    BigInt phi = BigInt(1);
    unsigned long omega = 0;
    BigInt tau = BigInt(1);
};

inline AfValues arith_functions(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("arith_functions: incomplete factorization");
    AfValues v;
    v.omega = f.primes.size();
    for (const auto& [p, e] : f.primes) {
        v.phi *= pow(p, e - 1) * (p - 1);
        v.tau *= static_cast<long>(e + 1);
    }
    return v;
}

inline AfValues arith_functions(const BigInt& n, const FactorOptions& opt = {}) {
    if (n < 1) throw std::domain_error("arith_functions: n must be positive");
    return arith_functions(factor(n, opt));
}

inline std::vector<BigInt> divisors(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("divisors: incomplete factorization");
    std::vector<BigInt> out{BigInt(1)};
    for (const auto& [p, e] : f.primes) {
        std::size_t base = out.size();
        BigInt pk(1);
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<long> divisors(long n) {
    if (n < 1) throw std::domain_error("divisors: n must be positive");
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline int mobius(long n) {
    if (n < 1) throw std::domain_error("mobius: n must be positive");
    int sign = 1;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    if (n > 1) sign = -sign;
    return sign;
}

/* smallest-prime-factor table backing the exhaustive bound sweeps */
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t limit) : spf_(limit + 1, 0) {
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            for (std::uint64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = i;
        }
    }
    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

    std::pair<unsigned, unsigned long> omega_tau(std::uint32_t n) const {
        unsigned om = 0;
        unsigned long tau = 1;
        while (n > 1) {
            std::uint32_t p = spf_[n];
            unsigned long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            ++om;
            tau *= e + 1;
        }
        return {om, tau};
    }

    std::uint64_t phi(std::uint32_t n) const {
        std::uint64_t r = n;
        while (n > 1) {
            std::uint32_t p = spf_[n];
            r -= r / p;
            while (n % p == 0) n /= p;
        }
        return r;
    }

private:
    std::vector<std::uint32_t> spf_;
};

/* log⁺ = max{log, 0}, with log⁺(0) = 0 for absolute-value arguments */
inline Interval log_plus(const Interval& x) {
    if (!x.certainly_positive()) {
        if (x.upper() <= 0.0) return Interval::exact(0L, x.precision());
    }
    return max(log(x), Interval::exact(0L, x.precision()));
}

/* log⁻ = min{log, 0} */
inline Interval log_minus(const Interval& x) {
    return min(log(x), Interval::exact(0L, x.precision()));
}

/* log* = max{log, 1} */
inline Interval log_star(const Interval& x) {
    if (!x.certainly_positive()) {
        if (x.upper() <= 0.0) return Interval::exact(1L, x.precision());
    }
    return max(log(x), Interval::exact(1L, x.precision()));
}

namespace detail {

inline Interval log_log(const BigInt& n, long prec) {
    return log(log(Interval::exact(n, prec)));
}

}  // namespace detail

/* ω(n) ≤ 1.4·log n / log log n, for n ≥ 3 */
inline Trool omega_growth_bound_at(const BigInt& n, unsigned long omega_n, long prec) {
    Interval rhs = Interval::exact(BigRat(7, 5), prec) * log(Interval::exact(n, prec)) /
                   detail::log_log(n, prec);
    return certainly_le(Interval::exact(BigInt(omega_n), prec), rhs);
}

/* τ(n) ≤ exp(1.1·log n / log log n), for n ≥ 3, compared on the log scale */
inline Trool tau_growth_bound_at(const BigInt& n, const BigInt& tau_n, long prec) {
    Interval rhs = Interval::exact(BigRat(11, 10), prec) * log(Interval::exact(n, prec)) /
                   detail::log_log(n, prec);
    return certainly_le(log(Interval::exact(tau_n, prec)), rhs);
}

/* φ(n) ≥ 0.5·n / log log n, for n ≥ 10^20 */
inline Trool phi_growth_bound_at(const BigInt& n, const BigInt& phi_n, long prec) {
    Interval rhs = Interval::exact(n, prec) / (Interval::exact(2L, prec) * detail::log_log(n, prec));
    return certainly_le(rhs, Interval::exact(phi_n, prec));
}

struct AfBoundsReport {
    Trool omega_ok = Trool::Unknown;
    Trool tau_ok = Trool::Unknown;
    Trool phi_ok = Trool::Unknown;
    bool phi_evaluated = false;  /* only for n ≥ 10^20 */
    double omega_margin = 0, tau_margin = 0, phi_margin = 0;
};

inline AfBoundsReport check_af_bounds(const BigInt& n, const AfValues& af) {
    if (n < 3) throw std::domain_error("check_af_bounds: n must be at least 3");
    AfBoundsReport rep;
    rep.omega_ok = certify([&](long p) { return omega_growth_bound_at(n, af.omega, p); });
    rep.tau_ok = certify([&](long p) { return tau_growth_bound_at(n, af.tau, p); });

    const long prec = 128;
    Interval ln = log(Interval::exact(n, prec));
    Interval lln = log(ln);
    Interval om_rhs = Interval::exact(BigRat(7, 5), prec) * ln / lln;
    rep.omega_margin = (om_rhs - Interval::exact(BigInt(af.omega), prec)).mid();
    Interval tau_rhs = Interval::exact(BigRat(11, 10), prec) * ln / lln;
    rep.tau_margin = (tau_rhs - log(Interval::exact(af.tau, prec))).mid();

    static const BigInt kPhiThreshold = pow(BigInt(10), 20);
    if (n >= kPhiThreshold) {
        rep.phi_evaluated = true;
        rep.phi_ok = certify([&](long p) { return phi_growth_bound_at(n, af.phi, p); });
        Interval phi_rhs = Interval::exact(n, prec) / (Interval::exact(2L, prec) * lln);
        rep.phi_margin = (Interval::exact(af.phi, prec) - phi_rhs).mid();
    }
    return rep;
}

/*
 * Exhaustive omega/tau bound sweep over [lo, hi].  A wide double-precision
 * margin accepts the bulk; thin cases are re-checked with certified
 * intervals.  Returns the first violating n, or 0 if none.
 */
inline std::uint32_t scan_af_bounds(std::uint32_t lo, std::uint32_t hi) {
    lo = std::max<std::uint32_t>(lo, 3);
    if (hi < lo) return 0;
    SpfSieve sieve(hi);
    const double slack = 1e-6;
    for (std::uint32_t n = lo; n <= hi; ++n) {
        auto [om, tau] = sieve.omega_tau(n);
        double ln = std::log(static_cast<double>(n));
        double lln = std::log(ln);
        double scale = ln / lln;
        bool om_easy = om + slack < 1.4 * scale;
        bool tau_easy = std::log(static_cast<double>(tau)) + slack < 1.1 * scale;
        if (om_easy && tau_easy) continue;
        BigInt N(static_cast<long>(n));
        if (!om_easy &&
            certify([&](long p) { return omega_growth_bound_at(N, om, p); }) != Trool::True)
            return n;
        if (!tau_easy &&
            certify([&](long p) {
                return tau_growth_bound_at(N, BigInt(static_cast<long>(tau)), p);
            }) != Trool::True)
            return n;
    }
    return 0;
}

}  // namespace quadlucas
