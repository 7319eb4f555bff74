#pragma once

/*
 * Rational prime machinery: sieve, deterministic Miller-Rabin, Pollard rho
 * (Brent variant), budgeted factorization, and a persistent factor cache.
 */

#include <quadlucas/bigint.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace quadlucas {

inline std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                comp[j] = true;
        }
    }
    return out;
}

/* primes below 10^6, shared by trial division */
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> ps = sieve_primes(1000000);
    return ps;
}

namespace detail {

inline bool mr_witness(const BigInt& n, const BigInt& nm1, const BigInt& d, unsigned long s,
                       const BigInt& a) {
    BigInt x = powmod(a, d, n);
    if (x.is_one() || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = mod(x * x, n);
        if (x == nm1) return true;
        if (x.is_one()) return false;
    }
    return false;
}

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

/*
 * Deterministic primality test.  The thirteen smallest prime witnesses decide
 * primality for everything below 3317044064679887385961981; larger inputs get
 * 64 extra witnesses drawn from a fixed-seed generator so results stay
 * reproducible.
 */
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const unsigned long tiny[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned long p : tiny) {
        if (n == static_cast<long>(p)) return true;
        if (divisible(n, BigInt(p))) return false;
    }
    BigInt nm1 = n - 1;
    auto [d, s] = remove_factor(nm1, BigInt(2));

    static const BigInt kThirteenWitnessBound("3317044064679887385961981");
    for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
        if (!detail::mr_witness(n, nm1, d, s, BigInt(a))) return false;
    if (n < kThirteenWitnessBound) return true;

    std::uint64_t seed = 0x5ca1ab1e0ddba11ull;
    BigInt span = n - 3;
    for (int i = 0; i < 64; ++i) {
        BigInt a = mod(BigInt(static_cast<unsigned long>(detail::splitmix64(seed))) *
                           BigInt(static_cast<unsigned long>(detail::splitmix64(seed))),
                       span) +
                   2;
        if (!detail::mr_witness(n, nm1, d, s, a)) return false;
    }
    return true;
}

/*
 * Brent-cycle Pollard rho with gcd batching.  Returns a nontrivial factor of
 * composite odd n, or 1 if the iteration cap ran out.
 */
inline BigInt rho_brent(const BigInt& n, unsigned long c, unsigned long iter_cap) {
    mpz_t y, x, ys, q, g, tmp, cz, nz;
    mpz_inits(y, x, ys, q, g, tmp, cz, nz, nullptr);
    mpz_set(nz, n.raw());
    mpz_set_ui(cz, c);
    mpz_set_ui(y, 2 + c);
    mpz_set_ui(q, 1);
    mpz_set_ui(g, 1);

    auto step = [&](mpz_t v) {
        mpz_mul(v, v, v);
        mpz_add(v, v, cz);
        mpz_mod(v, v, nz);
    };

    const unsigned long m = 128;
    unsigned long r = 1, used = 0;
    bool capped = false;
    while (mpz_cmp_ui(g, 1) == 0 && !capped) {
        mpz_set(x, y);
        for (unsigned long i = 0; i < r && !capped; ++i) {
            step(y);
            if (++used > iter_cap) capped = true;
        }
        unsigned long k = 0;
        while (k < r && mpz_cmp_ui(g, 1) == 0 && !capped) {
            mpz_set(ys, y);
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                step(y);
                if (++used > iter_cap) {
                    capped = true;
                    break;
                }
                mpz_sub(tmp, x, y);
                mpz_mul(q, q, tmp);
                mpz_mod(q, q, nz);
            }
            mpz_gcd(g, q, nz);
            k += m;
        }
        r *= 2;
    }
    if (mpz_cmp(g, nz) == 0) {
        /* batch overshot: back up one step at a time */
        do {
            step(ys);
            mpz_sub(tmp, x, ys);
            mpz_gcd(g, tmp, nz);
        } while (mpz_cmp_ui(g, 1) == 0);
    }
    BigInt out;
    if (!capped && mpz_cmp_ui(g, 1) > 0 && mpz_cmp(g, nz) < 0) mpz_set(out.raw(), g);
    else mpz_set_ui(out.raw(), 1);
    mpz_clears(y, x, ys, q, g, tmp, cz, nz, nullptr);
    return out;
}

struct Factorization {
    int sign = 1;
    std::map<BigInt, unsigned long> primes;  /* factors of |n| */
    BigInt cofactor = BigInt(1);             /* composite remainder if budget ran out */
    bool complete = true;

    BigInt magnitude() const {
        BigInt v = cofactor;
        for (const auto& [p, e] : primes) v *= pow(p, e);
        return v;
    }
    BigInt value() const { return sign < 0 ? -magnitude() : magnitude(); }

    /* "2^6 * 5" style rendering of the magnitude; "1" when empty */
    std::string str() const {
        if (primes.empty() && cofactor == 1) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, e] : primes) {
            if (!first) os << " * ";
            first = false;
            os << p.str();
            if (e != 1) os << '^' << e;
        }
        if (cofactor != 1) {
            if (!first) os << " * ";
            os << cofactor.str() << "?";
        }
        return os.str();
    }

    unsigned long multiplicity(const BigInt& p) const {
        auto it = primes.find(p);
        return it == primes.end() ? 0 : it->second;
    }
};

class FactorCache {
public:
    explicit FactorCache(std::string path) : path_(std::move(path)) { load(); }

    /* QUADLUCAS_CACHE env var wins; fall back to a dotfile in $HOME */
    static std::string default_path() {
        if (const char* env = std::getenv("QUADLUCAS_CACHE")) return env;
        if (const char* home = std::getenv("HOME"))
            return std::string(home) + "/.quadlucas-factors";
        return ".quadlucas-factors";
    }

    std::optional<Factorization> lookup(const BigInt& magnitude) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = entries_.find(magnitude.str());
        if (it == entries_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return it->second;
    }

    void append(const BigInt& magnitude, const Factorization& f) {
        if (!f.complete || f.sign < 0) return;
        std::lock_guard<std::mutex> lk(mu_);
        std::string key = magnitude.str();
        if (entries_.count(key)) return;
        entries_.emplace(key, f);
        ++appended_;

        std::string line = key + " = " + f.str() + "\n";
        int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
        if (fd < 0) {
            std::fprintf(stderr, "warning: factor cache not writable: %s\n", path_.c_str());
            return;
        }
        ::flock(fd, LOCK_EX);
        ssize_t written = ::write(fd, line.data(), line.size());
        (void)written;
        ::flock(fd, LOCK_UN);
        ::close(fd);
    }

    struct Stats {
        std::string path;
        std::size_t entries = 0, hits = 0, misses = 0, appended = 0, rejected_lines = 0;
    };
    Stats stats() const {
        std::lock_guard<std::mutex> lk(mu_);
        return {path_, entries_.size(), hits_, misses_, appended_, rejected_};
    }
    const std::string& path() const { return path_; }

private:
    void load() {
        std::ifstream in(path_);
        if (!in) return;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto parsed = parse_line(line);
            if (!parsed) {
                std::fprintf(stderr, "warning: %s:%zu: unreadable cache line ignored\n",
                             path_.c_str(), lineno);
                ++rejected_;
                continue;
            }
            entries_.insert(std::move(*parsed));
        }
    }

    static std::optional<std::pair<std::string, Factorization>> parse_line(const std::string& line) {
        auto eq = line.find('=');
        if (eq == std::string::npos) return std::nullopt;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            return s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string rhs = trim(line.substr(eq + 1));
        if (key.empty() || rhs.empty()) return std::nullopt;

        Factorization f;
        try {
            BigInt n(key);
            if (n.sign() < 0) return std::nullopt;
            std::size_t pos = 0;
            while (pos < rhs.size()) {
                auto star = rhs.find('*', pos);
                std::string tok = trim(rhs.substr(pos, star == std::string::npos ? star : star - pos));
                pos = star == std::string::npos ? rhs.size() : star + 1;
                if (tok.empty()) return std::nullopt;
                auto caret = tok.find('^');
                BigInt p(caret == std::string::npos ? tok : trim(tok.substr(0, caret)));
                unsigned long e = 1;
                if (caret != std::string::npos) {
                    BigInt ee(trim(tok.substr(caret + 1)));
                    if (ee < 1) return std::nullopt;
                    e = ee.to_ulong();
                }
                if (p < 2) {
                    if (p.is_one() && caret == std::string::npos && f.primes.empty() && n.is_one())
                        continue;  /* "1 = 1" */
                    return std::nullopt;
                }
                f.primes[p] += e;
            }
            if (f.magnitude() != n) return std::nullopt;  /* truncated or tampered */
            for (const auto& [p, e] : f.primes)
                if (!is_prime(p)) return std::nullopt;
            return std::make_pair(key, std::move(f));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    mutable std::mutex mu_;
    std::string path_;
    std::unordered_map<std::string, Factorization> entries_;
    std::size_t hits_ = 0, misses_ = 0, appended_ = 0, rejected_ = 0;
};

struct FactorOptions {
    long budget_ms = 30000;
    FactorCache* cache = nullptr;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline bool split_perfect_power(const BigInt& m, BigInt& root, unsigned long& k) {
    if (mpz_perfect_power_p(m.raw()) == 0) return false;
    for (unsigned long e = 2; e <= m.bit_length(); ++e) {
        BigInt r;
        if (mpz_root(r.raw(), m.raw(), e) != 0) {
            root = r;
            k = e;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/*
 * Full factorization of n: trial division below 10^6, then perfect-power
 * peeling and restarted rho until the time budget runs out.  On overrun the
 * remaining composite is reported in `cofactor` with complete=false.
 */
inline Factorization factor(const BigInt& n, const FactorOptions& opt = {}) {
    if (n.is_zero()) throw std::domain_error("factor: zero has no factorization");
    Factorization f;
    f.sign = n.sign();
    BigInt m = abs(n);
    if (m.is_one()) return f;

    if (opt.cache) {
        if (auto hit = opt.cache->lookup(m)) {
            hit->sign = f.sign;
            return *hit;
        }
    }

    const auto deadline = detail::Clock::now() + std::chrono::milliseconds(opt.budget_ms);

    for (std::uint32_t p : small_primes()) {
        if (m.is_one()) break;
        if (m.fits_long() &&
            static_cast<std::uint64_t>(p) * p > static_cast<std::uint64_t>(m.to_long()))
            break;  /* remaining m is prime */
        if (mpz_divisible_ui_p(m.raw(), p)) {
            auto [rest, e] = remove_factor(m, BigInt(static_cast<unsigned long>(p)));
            f.primes[BigInt(static_cast<unsigned long>(p))] = e;
            m = rest;
        }
    }

    std::vector<std::pair<BigInt, unsigned long>> work;
    if (m > 1) work.emplace_back(m, 1);
    while (!work.empty()) {
        auto [v, mult] = work.back();
        work.pop_back();
        if (v.is_one()) continue;
        if (is_prime(v)) {
            f.primes[v] += mult;
            continue;
        }
        BigInt root;
        unsigned long k = 0;
        if (detail::split_perfect_power(v, root, k)) {
            work.emplace_back(root, mult * k);
            continue;
        }
        BigInt g(1);
        unsigned long cap = 1ul << 18;
        for (unsigned long c = 1; detail::Clock::now() < deadline; c += 2, cap *= 2) {
            g = rho_brent(v, c, cap);
            if (g > 1) break;
        }
        if (g > 1) {
            work.emplace_back(g, mult);
            work.emplace_back(divexact(v, g), mult);
        } else {
            f.cofactor *= pow(v, mult);
            f.complete = false;
        }
    }

    if (opt.cache && f.complete) {
        Factorization stored = f;
        stored.sign = 1;
        opt.cache->append(abs(n), stored);
    }
    return f;
}

}  // namespace quadlucas
