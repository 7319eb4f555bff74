#pragma once

/* Value-semantic wrappers around GMP integers and rationals. */

#include <gmp.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace quadlucas {

class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(int v) { mpz_init_set_si(z_, v); }
    BigInt(long v) { mpz_init_set_si(z_, v); }
    BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }

    explicit BigInt(std::string_view s) {
        mpz_init(z_);
        if (mpz_set_str(z_, std::string(s).c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("BigInt: bad decimal literal: " + std::string(s));
        }
    }

    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }
    bool even() const { return mpz_even_p(z_) != 0; }

    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("BigInt: value does not fit in long");
        return mpz_get_si(z_);
    }
    unsigned long to_ulong() const {
        if (mpz_sgn(z_) < 0 || !mpz_fits_ulong_p(z_))
            throw std::overflow_error("BigInt: value does not fit in unsigned long");
        return mpz_get_ui(z_);
    }
    double to_double() const { return mpz_get_d(z_); }

    /* number of bits in |value|; 0 for value 0 */
    std::size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }
    std::size_t digits10() const { return mpz_sizeinbase(z_, 10); }

    std::string str() const {
        char* p = mpz_get_str(nullptr, 10, z_);
        std::string s(p);
        void (*freefn)(void*, std::size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(p, s.size() + 1);
        return s;
    }

    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.z_, z_);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { mpz_add(z_, z_, o.z_); return *this; }
    BigInt& operator-=(const BigInt& o) { mpz_sub(z_, z_, o.z_); return *this; }
    BigInt& operator*=(const BigInt& o) { mpz_mul(z_, z_, o.z_); return *this; }
    BigInt& operator+=(long v) { v >= 0 ? mpz_add_ui(z_, z_, v) : mpz_sub_ui(z_, z_, -(unsigned long)v); return *this; }
    BigInt& operator-=(long v) { v >= 0 ? mpz_sub_ui(z_, z_, v) : mpz_add_ui(z_, z_, -(unsigned long)v); return *this; }
    BigInt& operator*=(long v) { mpz_mul_si(z_, z_, v); return *this; }

    /* truncated division, C semantics */
    BigInt& operator/=(const BigInt& o) {
        if (o.is_zero()) throw std::domain_error("BigInt: division by zero");
        mpz_tdiv_q(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator%=(const BigInt& o) {
        if (o.is_zero()) throw std::domain_error("BigInt: division by zero");
        mpz_tdiv_r(z_, z_, o.z_);
        return *this;
    }

    friend BigInt operator+(BigInt a, const BigInt& b) { a += b; return a; }
    friend BigInt operator-(BigInt a, const BigInt& b) { a -= b; return a; }
    friend BigInt operator*(BigInt a, const BigInt& b) { a *= b; return a; }
    friend BigInt operator/(BigInt a, const BigInt& b) { a /= b; return a; }
    friend BigInt operator%(BigInt a, const BigInt& b) { a %= b; return a; }
    friend BigInt operator+(BigInt a, long b) { a += b; return a; }
    friend BigInt operator-(BigInt a, long b) { a -= b; return a; }
    friend BigInt operator*(BigInt a, long b) { a *= b; return a; }
    friend BigInt operator+(long a, BigInt b) { b += a; return b; }
    friend BigInt operator*(long a, BigInt b) { b *= a; return b; }

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = mpz_cmp(a.z_, b.z_);
        return c <=> 0;
    }
    friend bool operator==(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, long b) {
        int c = mpz_cmp_si(a.z_, b);
        return c <=> 0;
    }

    friend BigInt abs(BigInt a) { mpz_abs(a.z_, a.z_); return a; }
    friend BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt lcm(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt pow(const BigInt& a, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.z_, a.z_, e);
        return r;
    }
    friend BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
        if (mod.is_zero()) throw std::domain_error("powmod: zero modulus");
        BigInt r;
        mpz_powm(r.z_, base.z_, exp.z_, mod.z_);
        return r;
    }
    friend BigInt divexact(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("divexact: division by zero");
        BigInt r;
        mpz_divexact(r.z_, a.z_, b.z_);
        return r;
    }
    friend bool divisible(const BigInt& a, const BigInt& b) {
        return mpz_divisible_p(a.z_, b.z_) != 0;
    }
    /* nonnegative remainder */
    friend BigInt mod(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("mod: zero modulus");
        BigInt r;
        mpz_mod(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt fdiv(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("fdiv: division by zero");
        BigInt r;
        mpz_fdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    /* strip all factors of p from n; returns (reduced, multiplicity) */
    friend std::pair<BigInt, unsigned long> remove_factor(const BigInt& n, const BigInt& p) {
        BigInt r;
        unsigned long k = mpz_remove(r.z_, n.z_, p.z_);
        return {std::move(r), k};
    }
    friend BigInt isqrt(const BigInt& a) {
        if (a.sign() < 0) throw std::domain_error("isqrt: negative argument");
        BigInt r;
        mpz_sqrt(r.z_, a.z_);
        return r;
    }
    friend bool is_perfect_square(const BigInt& a) {
        return mpz_perfect_square_p(a.z_) != 0;
    }
    friend int kronecker(const BigInt& a, const BigInt& b) { return mpz_kronecker(a.z_, b.z_); }
    friend int kronecker(const BigInt& a, unsigned long b) { return mpz_kronecker_ui(a.z_, b); }

private:
    mpz_t z_;
};

class BigRat {
public:
    BigRat() { mpq_init(q_); }
    BigRat(int v) : BigRat(static_cast<long>(v)) {}
    BigRat(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    BigRat(const BigInt& v) {
        mpq_init(q_);
        mpq_set_z(q_, v.raw());
    }
    BigRat(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw std::domain_error("BigRat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    BigRat(long num, long den) : BigRat(BigInt(num), BigInt(den)) {}

    /* accepts "a" or "a/b", decimal */
    explicit BigRat(std::string_view s) {
        mpq_init(q_);
        if (mpq_set_str(q_, std::string(s).c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            throw std::invalid_argument("BigRat: bad rational literal: " + std::string(s));
        }
        if (mpz_sgn(mpq_denref(q_)) < 0) {
            mpz_neg(mpq_numref(q_), mpq_numref(q_));
            mpz_neg(mpq_denref(q_), mpq_denref(q_));
        }
        mpq_canonicalize(q_);
    }

    BigRat(const BigRat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    BigRat(BigRat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    BigRat& operator=(const BigRat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    BigRat& operator=(BigRat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~BigRat() { mpq_clear(q_); }

    mpq_srcptr raw() const { return q_; }

    BigInt num() const {
        BigInt r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    BigInt den() const {
        BigInt r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    double to_double() const { return mpq_get_d(q_); }

    std::string str() const {
        char* p = mpq_get_str(nullptr, 10, q_);
        std::string s(p);
        void (*freefn)(void*, std::size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(p, s.size() + 1);
        return s;
    }

    BigRat operator-() const {
        BigRat r;
        mpq_neg(r.q_, q_);
        return r;
    }
    BigRat inverse() const {
        if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
        BigRat r;
        mpq_inv(r.q_, q_);
        return r;
    }

    BigRat& operator+=(const BigRat& o) { mpq_add(q_, q_, o.q_); return *this; }
    BigRat& operator-=(const BigRat& o) { mpq_sub(q_, q_, o.q_); return *this; }
    BigRat& operator*=(const BigRat& o) { mpq_mul(q_, q_, o.q_); return *this; }
    BigRat& operator/=(const BigRat& o) {
        if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend BigRat operator+(BigRat a, const BigRat& b) { a += b; return a; }
    friend BigRat operator-(BigRat a, const BigRat& b) { a -= b; return a; }
    friend BigRat operator*(BigRat a, const BigRat& b) { a *= b; return a; }
    friend BigRat operator/(BigRat a, const BigRat& b) { a /= b; return a; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
        int c = mpq_cmp(a.q_, b.q_);
        return c <=> 0;
    }
    friend bool operator==(const BigRat& a, long b) { return mpq_cmp_si(a.q_, b, 1) == 0; }
    friend std::strong_ordering operator<=>(const BigRat& a, long b) {
        int c = mpq_cmp_si(a.q_, b, 1);
        return c <=> 0;
    }

    friend BigRat abs(BigRat a) {
        mpq_abs(a.q_, a.q_);
        return a;
    }

private:
    mpq_t q_;
};

}  // namespace quadlucas
