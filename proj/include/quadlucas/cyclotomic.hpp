#pragma once

/*
 * Integer cyclotomic polynomials Φ_n and their evaluation at field elements.
 * Φ_n is obtained by exact division of x^n − 1 by the Φ_d of proper divisors,
 * and memoized for reuse across verifier runs.
 */

#include <quadlucas/arith.hpp>
#include <quadlucas/bigint.hpp>
#include <quadlucas/field.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace quadlucas {

/* dense integer polynomial, coefficients little-endian */
class ZPoly {
public:
    ZPoly() : c_{BigInt(0)} {}
    explicit ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
        trim();
    }

    static ZPoly constant(BigInt v) { return ZPoly(std::vector<BigInt>{std::move(v)}); }
    static ZPoly xn_minus_1(std::size_t n) {
        std::vector<BigInt> c(n + 1, BigInt(0));
        c[0] = BigInt(-1);
        c[n] = BigInt(1);
        return ZPoly(std::move(c));
    }

    bool is_zero() const { return c_.size() == 1 && c_[0].is_zero(); }
    std::size_t degree() const { return c_.size() - 1; }
    const BigInt& coeff(std::size_t i) const {
        static const BigInt zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const BigInt& lead() const { return c_.back(); }
    bool is_monic() const { return lead().is_one(); }

    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                out[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return ZPoly(std::move(out));
    }

    /* exact long division by a monic divisor; throws if a remainder is left */
    friend ZPoly exact_div(const ZPoly& num, const ZPoly& den) {
        if (!den.is_monic()) throw std::domain_error("exact_div: divisor must be monic");
        if (num.is_zero()) return ZPoly();
        if (num.degree() < den.degree()) throw std::domain_error("exact_div: nonzero remainder");
        std::vector<BigInt> rem = num.c_;
        std::size_t qdeg = num.degree() - den.degree();
        std::vector<BigInt> q(qdeg + 1, BigInt(0));
        for (std::size_t k = qdeg + 1; k-- > 0;) {
            BigInt f = rem[k + den.degree()];
            if (f.is_zero()) continue;
            q[k] = f;
            for (std::size_t j = 0; j < den.c_.size(); ++j) rem[k + j] -= f * den.c_[j];
        }
        for (const BigInt& r : rem)
            if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
        return ZPoly(std::move(q));
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement acc(x.field(), BigRat(0), BigRat(0));
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + BigRat(c_[i]);
        return acc;
    }
    BigInt eval(const BigInt& x) const {
        BigInt acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    const std::vector<BigInt>& coefficients() const { return c_; }

private:
    void trim() {
        while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) c_.push_back(BigInt(0));
    }
    std::vector<BigInt> c_;
};

/* Φ_n, memoized; safe for concurrent callers */
inline const ZPoly& cyclotomic(unsigned long n) {
    if (n == 0) throw std::domain_error("cyclotomic: n must be positive");
    static std::map<unsigned long, ZPoly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::function<const ZPoly&(unsigned long)> get = [&](unsigned long k) -> const ZPoly& {
        auto found = memo.find(k);
        if (found != memo.end()) return found->second;
        ZPoly poly = ZPoly::xn_minus_1(k);
        for (long d : divisors(static_cast<long>(k)))
            if (static_cast<unsigned long>(d) != k)
                poly = exact_div(poly, get(static_cast<unsigned long>(d)));
        return memo.emplace(k, std::move(poly)).first->second;
    };
    return get(n);
}

inline FieldElement eval_cyclotomic(unsigned long n, const FieldElement& x) {
    return cyclotomic(n).eval(x);
}

}  // namespace quadlucas
