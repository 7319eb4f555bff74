#include <quadlucas/height.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace quadlucas;

namespace {

struct Known {
    const char* literal;
    double h;
};

/* heights of the fixed corpus, each checked against a closed form */
const std::vector<Known> kCorpus = {
    {"1+1*sqrt(2)", 0.44068679350977147},       /* ½ log(1+√2) */
    {"1/2+1/2*sqrt(5)", 0.24060591252980174},   /* ½ log φ */
    {"2+1*sqrt(3)", 0.6584789484624083},        /* ½ log(2+√3) */
    {"3+1*sqrt(2)", 0.9729550745276566},        /* ½ log 7 */
    {"sqrt(2)", 0.34657359027997264},           /* ½ log 2 */
    {"3/4+1/4*sqrt(-7)", 0.34657359027997264},  /* ½ log 2, |γ| = 1 */
    {"1+1*sqrt(-1)", 0.34657359027997264},      /* ½ log 2 */
    {"2+1*sqrt(-3)", 0.9729550745276566},       /* ½ log 7 */
    {"1/2+1/2*sqrt(2)", 0.7872603837897441},    /* ½(log 4 + log((1+√2)/2)) */
    {"2", 0.6931471805599453},                  /* log 2 */
    {"3/2", 1.0986122886681098},                /* log 3 */
    {"-2", 0.6931471805599453},                 /* log 2 */
    {"5/2+1/2*sqrt(5)", 0.8047189562170501},    /* ½ log 5 */
};

}  // namespace

TEST_CASE("heights match closed forms") {
    for (const auto& k : kCorpus) {
        FieldElement g = parse_element(k.literal);
        Interval h = height(g);
        INFO(k.literal);
        CHECK(std::abs(h.mid() - k.h) < 1e-9);
        CHECK(h.width() < 1e-9);
    }
}

TEST_CASE("the two height routes agree tightly across the corpus") {
    for (const auto& k : kCorpus) {
        FieldElement g = parse_element(k.literal);
        for (long prec : {64L, 128L, 256L}) {
            Interval a = height_valuation(g, prec);
            Interval b = height_mahler(g, prec);
            INFO(k.literal << " @ " << prec);
            CHECK(overlaps(a, b));
        }
    }
}

TEST_CASE("height scales linearly under powers") {
    for (const char* lit : {"1+1*sqrt(2)", "1/2+1/2*sqrt(5)", "3/4+1/4*sqrt(-7)",
                            "1/2+1/2*sqrt(2)", "3/2"}) {
        FieldElement g = parse_element(lit);
        Interval hg = height(g);
        for (unsigned long n = 2; n <= 20; n += 3) {
            Interval hn = height(power(g, n));
            INFO(lit << " n=" << n);
            CHECK(overlaps(hn, hg * static_cast<long>(n)));
        }
    }
}

TEST_CASE("height is stable under inversion and conjugation") {
    for (const auto& k : kCorpus) {
        FieldElement g = parse_element(k.literal);
        Interval h = height(g);
        INFO(k.literal);
        CHECK(overlaps(h, height(g.inverse())));
        CHECK(overlaps(h, height(g.conjugate())));
    }
}

TEST_CASE("roots of unity are exactly the elements of tiny height") {
    for (const char* lit : {"1", "-1", "(1,0,1)+", "1/2+1/2*sqrt(-3)", "-1/2+1/2*sqrt(-3)"}) {
        FieldElement g = parse_element(lit);
        CHECK(is_root_of_unity(g));
        CHECK(height(g).upper() < 1e-6);
    }
    for (const auto& k : kCorpus) {
        FieldElement g = parse_element(k.literal);
        CHECK_FALSE(is_root_of_unity(g));
        CHECK(height(g).lower() > 1e-6);
    }
}

TEST_CASE("height rejects zero") {
    CHECK_THROWS_AS(height(FieldElement::rational(BigRat(0))), ZeroElement);
    CHECK_THROWS_AS(height_valuation(FieldElement::rational(BigRat(0))), ZeroElement);
    CHECK_THROWS_AS(height_mahler(FieldElement::rational(BigRat(0))), ZeroElement);
}

TEST_CASE("height drop between cyclotomic value and phi(n) copies is bounded") {
    FieldElement g1 = parse_element("1+1*sqrt(2)");

    SECTION("documented margins") {
        auto row = check_prop21_item1(g1, 5);
        CHECK(row.verdict == Trool::True);
        CHECK(std::abs(row.lhs.mid() - 0.2612658698309369) < 1e-6);
        CHECK(std::abs(row.rhs.mid() - 5.508335596567001) < 1e-6);
        CHECK(row.margin.lower() > 5.2);

        auto two = check_prop21_item1(parse_element("2"), 1);
        CHECK(two.verdict == Trool::True);
        CHECK(std::abs(two.lhs.mid() - 0.6931471805599453) < 1e-9);
        CHECK(std::abs(two.rhs.mid() - 1.1447298858494002) < 1e-9);
        CHECK(std::abs(two.margin.mid() - 0.4515827052894549) < 1e-9);

        auto golden = check_prop21_item1(parse_element("1/2+1/2*sqrt(5)"), 12);
        CHECK(golden.verdict == Trool::True);
        CHECK(golden.margin.lower() > 0);
    }

    SECTION("sweep over the corpus") {
        for (const auto& k : kCorpus) {
            FieldElement g = parse_element(k.literal);
            for (unsigned long n : {1ul, 2ul, 3ul, 6ul, 8ul, 12ul, 30ul, 60ul, 105ul}) {
                auto row = check_prop21_item1(g, n);
                INFO(k.literal << " n=" << n);
                CHECK(row.verdict == Trool::True);
            }
        }
    }

    SECTION("vanishing cyclotomic values are an error, not a height of zero") {
        CHECK_THROWS_AS(check_prop21_item1(parse_element("(1,0,1)+"), 4), RootOfUnityAtN);
        CHECK_THROWS_AS(check_prop21_item1(parse_element("1"), 1), RootOfUnityAtN);
        CHECK_THROWS_AS(check_prop21_item1(parse_element("1/2+1/2*sqrt(-3)"), 6), RootOfUnityAtN);
        CHECK_THROWS_AS(check_prop21_item1(g1, 0), std::domain_error);
    }
}

TEST_CASE("lower bound on log|phi_n(gamma)| holds with enormous slack") {
    FieldElement g1 = parse_element("1+1*sqrt(2)");

    SECTION("documented example") {
        auto row = check_prop21_item2(g1, 6);
        CHECK(row.verdict == Trool::True);
        CHECK(std::abs(row.rhs.mid() - 1.4848296896213304) < 1e-6);
        CHECK(row.margin.lower() > 1e13);
    }

    SECTION("an element on the unit circle keeps |phi_n| small but positive") {
        FieldElement g6 = parse_element("(2,-3,2)+");
        for (unsigned long n = 1; n <= 24; ++n) {
            auto row = check_prop21_item2(g6, n);
            INFO("n=" << n);
            CHECK(row.verdict == Trool::True);
        }
    }

    SECTION("sweep") {
        for (const char* lit : {"1/2+1/2*sqrt(5)", "3/2", "1/2+1/2*sqrt(2)"}) {
            FieldElement g = parse_element(lit);
            for (unsigned long n : {1ul, 2ul, 5ul, 10ul, 36ul}) {
                auto row = check_prop21_item2(g, n);
                INFO(lit << " n=" << n);
                CHECK(row.verdict == Trool::True);
            }
        }
    }

    SECTION("roots of unity are rejected") {
        CHECK_THROWS_AS(check_prop21_item2(parse_element("(1,0,1)+"), 3), std::domain_error);
    }
}
