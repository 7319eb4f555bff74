#include <catch2/catch_amalgamated.hpp>

#include <quadlucas/cyclotomic.hpp>

using namespace quadlucas;

namespace {

/* independent construction: Φ_n = Π_{d|n} (x^{n/d} − 1)^{μ(d)}, one division at the end */
ZPoly cyclotomic_oracle(unsigned long n) {
    ZPoly num = ZPoly::constant(BigInt(1));
    ZPoly den = ZPoly::constant(BigInt(1));
    for (long d : divisors(static_cast<long>(n))) {
        int mu = mobius(d);
        if (mu == 1) num = num * ZPoly::xn_minus_1(n / d);
        if (mu == -1) den = den * ZPoly::xn_minus_1(n / d);
    }
    return exact_div(num, den);
}

/* independent evaluation: plain power sum instead of Horner */
FieldElement eval_oracle(const ZPoly& p, const FieldElement& x) {
    FieldElement acc(x.field(), BigRat(0), BigRat(0));
    for (std::size_t i = 0; i <= p.degree(); ++i)
        acc = acc + power(x, i) * BigRat(p.coeff(i));
    return acc;
}

}  // namespace

TEST_CASE("small cyclotomic polynomials have their textbook coefficients") {
    CHECK(cyclotomic(1) == ZPoly({BigInt(-1), BigInt(1)}));
    CHECK(cyclotomic(2) == ZPoly({BigInt(1), BigInt(1)}));
    CHECK(cyclotomic(3) == ZPoly({BigInt(1), BigInt(1), BigInt(1)}));
    CHECK(cyclotomic(4) == ZPoly({BigInt(1), BigInt(0), BigInt(1)}));
    CHECK(cyclotomic(6) == ZPoly({BigInt(1), BigInt(-1), BigInt(1)}));
    CHECK(cyclotomic(12) == ZPoly({BigInt(1), BigInt(0), BigInt(-1), BigInt(0), BigInt(1)}));
}

TEST_CASE("degree is phi(n), monic, constant term 1 for n >= 2") {
    for (unsigned long n = 1; n <= 300; ++n) {
        const ZPoly& p = cyclotomic(n);
        CHECK(p.is_monic());
        CHECK(BigInt(static_cast<long>(p.degree())) == arith_functions(BigInt((long)n)).phi);
        if (n >= 2) CHECK(p.coeff(0).is_one());
    }
}

TEST_CASE("coefficients stay within ±1 until n = 105") {
    for (unsigned long n = 1; n < 105; ++n)
        for (const BigInt& c : cyclotomic(n).coefficients())
            CHECK(abs(c) <= 1);
    bool has_two = false;
    for (const BigInt& c : cyclotomic(105).coefficients())
        if (c == -2) has_two = true;
    CHECK(has_two);
}

TEST_CASE("product over divisors reconstructs x^n - 1") {
    for (unsigned long n = 1; n <= 100; ++n) {
        ZPoly prod = ZPoly::constant(BigInt(1));
        for (long d : divisors(static_cast<long>(n))) prod = prod * cyclotomic(d);
        CHECK(prod == ZPoly::xn_minus_1(n));
    }
}

TEST_CASE("agrees with the moebius-product construction") {
    for (unsigned long n : {1ul, 2ul, 3ul, 8ul, 12ul, 30ul, 36ul, 100ul, 105ul, 210ul, 255ul})
        CHECK(cyclotomic(n) == cyclotomic_oracle(n));
}

TEST_CASE("palindromic coefficients for n > 1") {
    for (unsigned long n : {2ul, 5ul, 12ul, 36ul, 105ul, 120ul}) {
        const ZPoly& p = cyclotomic(n);
        for (std::size_t i = 0; i <= p.degree(); ++i) CHECK(p.coeff(i) == p.coeff(p.degree() - i));
    }
}

TEST_CASE("evaluation spot values") {
    auto g = parse_element("1+1*sqrt(2)");
    auto f3 = eval_cyclotomic(3, g);
    CHECK(f3 == parse_element("5+3*sqrt(2)"));
    CHECK(f3.norm() == BigRat(7));
    auto f5 = eval_cyclotomic(5, g);
    CHECK(f5 == parse_element("29+20*sqrt(2)"));
    CHECK(f5.norm() == BigRat(41));
    CHECK(eval_cyclotomic(1, parse_element("1")).is_zero());
    CHECK(eval_cyclotomic(4, g) == parse_element("4+2*sqrt(2)"));
}

TEST_CASE("Horner evaluation matches the power-sum oracle") {
    for (const char* lit : {"1+1*sqrt(2)", "(1,-1,-1)+", "(2,-3,2)+", "1/2+1/2*sqrt(2)", "-3/2"}) {
        auto g = parse_element(lit);
        for (unsigned long n : {1ul, 2ul, 3ul, 6ul, 12ul, 15ul})
            CHECK(eval_cyclotomic(n, g) == eval_oracle(cyclotomic(n), g));
    }
}

TEST_CASE("integer evaluation and the divisor product at a point") {
    /* 2^11 − 1 = Π_{d|11} Φ_d(2) = Φ_1(2)·Φ_11(2) */
    CHECK(cyclotomic(1).eval(BigInt(2)) * cyclotomic(11).eval(BigInt(2)) == 2047);
    CHECK(cyclotomic(11).eval(BigInt(2)) == 2047);  /* Φ_1(2) = 1 */
    for (unsigned long n = 2; n <= 40; ++n) {
        BigInt prod(1);
        for (long d : divisors(static_cast<long>(n)))
            prod *= cyclotomic(static_cast<unsigned long>(d)).eval(BigInt(3));
        CHECK(prod == pow(BigInt(3), n) - 1);
    }
}

TEST_CASE("exact division rejects non-divisors") {
    CHECK_THROWS_AS(exact_div(ZPoly::xn_minus_1(5), cyclotomic(2)), std::domain_error);
    CHECK_THROWS_AS(exact_div(cyclotomic(4), ZPoly({BigInt(1), BigInt(2)})), std::domain_error);
}
