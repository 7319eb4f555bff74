#pragma once

/*
 * Exact arithmetic in Q and in quadratic fields Q(√m): elements in the
 * canonical form x + y√m with rational coordinates, conjugation, ambient
 * norm/trace, minimal polynomials, complex-embedding magnitudes, and the
 * element literal grammar used by the CLI.
 */

#include <quadlucas/arith.hpp>
#include <quadlucas/bigint.hpp>
#include <quadlucas/interval.hpp>
#include <quadlucas/primes.hpp>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quadlucas {

struct ReducibleInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* (squarefree kernel, square part): n = kernel · square² with kernel squarefree */
inline std::pair<BigInt, BigInt> squarefree_kernel(const BigInt& n) {
    if (n.is_zero()) throw std::domain_error("squarefree_kernel: zero input");
    Factorization f = factor(abs(n));
    if (!f.complete) throw std::runtime_error("squarefree_kernel: factorization budget exhausted");
    BigInt kernel(1), square(1);
    for (const auto& [p, e] : f.primes) {
        if (e % 2 == 1) kernel *= p;
        if (e / 2 > 0) square *= pow(p, e / 2);
    }
    if (n.sign() < 0) kernel = -kernel;
    return {kernel, square};
}

class QuadraticField {
public:
    /* the degree-1 field Q itself */
    static QuadraticField rationals() { return QuadraticField(); }

    static QuadraticField real_or_imaginary(const BigInt& m) {
        if (m.is_zero() || m.is_one())
            throw std::invalid_argument("QuadraticField: m must be squarefree and not 0 or 1");
        auto [kernel, square] = squarefree_kernel(m);
        if (!square.is_one())
            throw std::invalid_argument("QuadraticField: m must be squarefree");
        QuadraticField K;
        K.d_ = 2;
        K.m_ = m;
        K.disc_ = (mod(m, BigInt(4)).is_one()) ? m : m * 4;
        return K;
    }

    int degree() const { return d_; }
    const BigInt& m() const { return m_; }
    const BigInt& discriminant() const { return disc_; }
    bool is_rational_field() const { return d_ == 1; }
    bool is_imaginary() const { return d_ == 2 && m_.sign() < 0; }
    /* integral basis is (1, (1+√m)/2) when m ≡ 1 mod 4, else (1, √m) */
    bool half_integral_basis() const { return d_ == 2 && mod(m_, BigInt(4)).is_one(); }

    friend bool operator==(const QuadraticField& a, const QuadraticField& b) {
        return a.d_ == b.d_ && a.m_ == b.m_;
    }

private:
    QuadraticField() = default;
    BigInt m_ = BigInt(1), disc_ = BigInt(1);
    int d_ = 1;
};

/*
 * Primitive integer minimal polynomial.  degree 2: a·t² + b·t + c with a > 0;
 * degree 1: b·t + c with b > 0 (a = 0).
 */
struct MinPoly {
    int degree = 1;
    BigInt a, b, c;
};

class FieldElement {
public:
    FieldElement(QuadraticField K, BigRat x, BigRat y)
        : K_(std::move(K)), x_(std::move(x)), y_(std::move(y)) {
        if (K_.degree() == 1 && !y_.is_zero())
            throw std::invalid_argument("FieldElement: nonzero surd coordinate in Q");
    }

    static FieldElement rational(BigRat q) {
        return FieldElement(QuadraticField::rationals(), std::move(q), BigRat(0));
    }

    const QuadraticField& field() const { return K_; }
    const BigRat& x() const { return x_; }
    const BigRat& y() const { return y_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    bool is_one() const { return x_ == 1 && y_.is_zero(); }
    bool is_rational() const { return y_.is_zero(); }

    FieldElement conjugate() const { return FieldElement(K_, x_, -y_); }
    BigRat norm() const {
        if (K_.degree() == 1) return x_;
        return x_ * x_ - BigRat(K_.m()) * y_ * y_;
    }
    BigRat trace() const {
        if (K_.degree() == 1) return x_;
        return x_ * 2;
    }

    FieldElement operator-() const { return FieldElement(K_, -x_, -y_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.require_same_field(b);
        return FieldElement(a.K_, a.x_ + b.x_, a.y_ + b.y_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.require_same_field(b);
        return FieldElement(a.K_, a.x_ - b.x_, a.y_ - b.y_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.require_same_field(b);
        if (a.K_.degree() == 1) return FieldElement(a.K_, a.x_ * b.x_, BigRat(0));
        BigRat m(a.K_.m());
        return FieldElement(a.K_, a.x_ * b.x_ + m * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }
    friend FieldElement operator+(const FieldElement& a, const BigRat& q) {
        return FieldElement(a.K_, a.x_ + q, a.y_);
    }
    friend FieldElement operator-(const FieldElement& a, const BigRat& q) {
        return FieldElement(a.K_, a.x_ - q, a.y_);
    }
    friend FieldElement operator*(const FieldElement& a, const BigRat& q) {
        return FieldElement(a.K_, a.x_ * q, a.y_ * q);
    }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("FieldElement: inverse of zero");
        if (K_.degree() == 1) return FieldElement(K_, x_.inverse(), BigRat(0));
        BigRat n = norm();
        return FieldElement(K_, x_ / n, -y_ / n);
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.K_ == b.K_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    MinPoly minpoly() const {
        MinPoly mp;
        if (y_.is_zero()) {
            mp.degree = 1;
            mp.a = BigInt(0);
            mp.b = x_.den();
            mp.c = -x_.num();
            return mp;
        }
        /* t = x + y√m satisfies t² − (2x)t + (x² − m y²) = 0 */
        BigRat tr = x_ * 2, nm = norm();
        BigInt L = lcm(tr.den(), nm.den());
        BigInt a = L, b = -(tr * BigRat(L)).num(), c = (nm * BigRat(L)).num();
        BigInt g = gcd(gcd(a, b), c);
        mp.degree = 2;
        mp.a = divexact(a, g);
        mp.b = divexact(b, g);
        mp.c = divexact(c, g);
        return mp;
    }

    std::string str() const {
        if (y_.is_zero()) return x_.str();
        std::string s;
        if (!x_.is_zero()) s = x_.str();
        BigRat ay = abs(y_);
        if (!s.empty()) s += (y_.sign() > 0 ? "+" : "-");
        else if (y_.sign() < 0) s += "-";
        s += ay.str() + "*sqrt(" + K_.m().str() + ")";
        return s;
    }

private:
    void require_same_field(const FieldElement& o) const {
        if (!(K_ == o.K_))
            throw std::invalid_argument("FieldElement: mixed-field arithmetic");
    }

    QuadraticField K_;
    BigRat x_, y_;
};

inline FieldElement power(const FieldElement& g, unsigned long n) {
    FieldElement acc(g.field(), BigRat(1), BigRat(0));
    FieldElement base = g;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

/* u_n = γⁿ − 1 */
inline FieldElement pow_minus_one(const FieldElement& g, unsigned long n) {
    return power(g, n) - BigRat(1);
}

/* exact: the only quadratic (or rational) roots of unity have order 1,2,3,4,6 */
inline bool is_root_of_unity(const FieldElement& g) {
    if (g.is_zero()) throw std::domain_error("is_root_of_unity: zero element");
    for (unsigned long k : {1ul, 2ul, 3ul, 4ul, 6ul})
        if (power(g, k).is_one()) return true;
    return false;
}

/*
 * Builds the element from an integer polynomial a·t² + b·t + c and a root
 * choice: root = (−b ± √(b²−4ac)) / (2a), the sign naming the principal
 * square root branch.  A reducible quadratic yields the selected rational
 * root as a degree-1 element unless the caller insists on irreducibility.
 */
inline FieldElement element_from_minpoly(const BigInt& a, const BigInt& b, const BigInt& c,
                                         int root_sign, bool require_irreducible = false) {
    if (root_sign != 1 && root_sign != -1)
        throw std::invalid_argument("element_from_minpoly: root selector must be ±1");
    if (a.is_zero()) {
        if (b.is_zero()) throw std::invalid_argument("element_from_minpoly: degenerate input");
        BigRat root(-c, b);
        if (root.is_zero()) throw ZeroElement("element_from_minpoly: selected root is zero");
        return FieldElement::rational(root);
    }
    BigInt disc = b * b - 4 * a * c;
    if (disc.is_zero() || is_perfect_square(disc)) {
        if (require_irreducible)
            throw ReducibleInput("element_from_minpoly: polynomial splits over Q");
        BigInt s = isqrt(abs(disc));
        BigRat root(-b + (root_sign > 0 ? s : -s), a * 2);
        if (root.is_zero()) throw ZeroElement("element_from_minpoly: selected root is zero");
        return FieldElement::rational(root);
    }
    auto [m, e] = squarefree_kernel(disc);
    QuadraticField K = QuadraticField::real_or_imaginary(m);
    BigRat x(-b, a * 2);
    BigRat y(root_sign > 0 ? e : -e, a * 2);
    return FieldElement(K, x, y);
}

/* |γ^σ| as a certified interval; which ∈ {0, 1} picks the embedding */
inline Interval abs_embedding(const FieldElement& g, int which, long prec) {
    const QuadraticField& K = g.field();
    if (K.degree() == 1) return abs(Interval::exact(g.x(), prec));
    if (K.is_imaginary()) {
        /* both embeddings share the modulus √(x² + |m|y²) = √N */
        return sqrt(Interval::exact(g.norm(), prec));
    }
    Interval s = sqrt(Interval::exact(K.m(), prec));
    Interval x = Interval::exact(g.x(), prec), y = Interval::exact(g.y(), prec);
    return abs(which == 0 ? x + y * s : x - y * s);
}

/* Σ_σ log⁺|γ^σ| over all complex embeddings of the ambient field */
inline Interval sum_log_plus_embeddings(const FieldElement& g, long prec) {
    if (g.field().degree() == 1) return log_plus(abs_embedding(g, 0, prec));
    return log_plus(abs_embedding(g, 0, prec)) + log_plus(abs_embedding(g, 1, prec));
}

/*
 * Element literals: `x+y*sqrt(m)` with exact rational x, y, or the
 * minimal-polynomial form `(a,b,c)±`, or a bare rational.
 */
inline FieldElement parse_element(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("element literal: empty input");

    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> std::invalid_argument {
        return std::invalid_argument("element literal '" + std::string(text) + "': " + why);
    };
    auto peek = [&]() -> char { return pos < s.size() ? s[pos] : '\0'; };
    auto take_int = [&]() -> BigInt {
        std::size_t start = pos;
        if (peek() == '+' || peek() == '-') ++pos;
        std::size_t digits = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos, ++digits;
        if (digits == 0) throw fail("expected integer");
        return BigInt(s.substr(start, pos - start));
    };
    auto take_rat = [&]() -> BigRat {
        BigInt num = take_int();
        if (peek() == '/') {
            ++pos;
            BigInt den = take_int();
            if (den.is_zero()) throw fail("zero denominator");
            return BigRat(num, den);
        }
        return BigRat(num);
    };

    if (peek() == '(') {
        ++pos;
        BigInt a = take_int();
        if (peek() != ',') throw fail("expected ','");
        ++pos;
        BigInt b = take_int();
        if (peek() != ',') throw fail("expected ','");
        ++pos;
        BigInt c = take_int();
        if (peek() != ')') throw fail("expected ')'");
        ++pos;
        char sign = peek();
        if (sign != '+' && sign != '-') throw fail("expected root selector + or -");
        ++pos;
        if (pos != s.size()) throw fail("trailing characters");
        return element_from_minpoly(a, b, c, sign == '+' ? 1 : -1);
    }

    /* surd form: [rat] [± [rat*]sqrt(m)] */
    std::optional<BigRat> rat_part;
    std::optional<BigRat> surd_coeff;
    BigInt m(0);

    auto take_term = [&](int lead_sign) {
        if (s.compare(pos, 5, "sqrt(") == 0) {
            pos += 5;
            BigInt mm = take_int();
            if (peek() != ')') throw fail("expected ')'");
            ++pos;
            if (surd_coeff) throw fail("more than one sqrt term");
            surd_coeff = BigRat(lead_sign);
            m = mm;
            return;
        }
        BigRat r = take_rat();
        if (lead_sign < 0) r = -r;
        if (peek() == '*') {
            ++pos;
            if (s.compare(pos, 5, "sqrt(") != 0) throw fail("expected sqrt(");
            pos += 5;
            BigInt mm = take_int();
            if (peek() != ')') throw fail("expected ')'");
            ++pos;
            if (surd_coeff) throw fail("more than one sqrt term");
            surd_coeff = r;
            m = mm;
            return;
        }
        if (rat_part) throw fail("more than one rational term");
        rat_part = r;
    };

    int first_sign = +1;
    if ((peek() == '+' || peek() == '-') && s.compare(pos + 1, 5, "sqrt(") == 0) {
        first_sign = peek() == '-' ? -1 : +1;
        ++pos;
    }
    take_term(first_sign);
    while (pos < s.size()) {
        char op = peek();
        if (op != '+' && op != '-') throw fail("expected + or -");
        ++pos;
        take_term(op == '+' ? +1 : -1);
    }

    BigRat x = rat_part.value_or(BigRat(0));
    BigRat y = surd_coeff.value_or(BigRat(0));
    if (y.is_zero()) return FieldElement::rational(x);
    if (m.is_zero()) return FieldElement::rational(x);
    if (m.is_one()) return FieldElement::rational(x + y);
    auto [kernel, square] = squarefree_kernel(m);
    y = y * BigRat(square);
    if (kernel.is_one()) return FieldElement::rational(x + y);
    QuadraticField K = QuadraticField::real_or_imaginary(kernel);
    return FieldElement(K, std::move(x), std::move(y));
}

}  // namespace quadlucas
