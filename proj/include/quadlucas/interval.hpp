#pragma once

/*
 * Outward-rounded real intervals on top of MPFR.
 *
 * Every arithmetic result encloses the exact result of the operation applied
 * to any points of the operand intervals.  Comparisons are three-valued:
 * an interval overlap yields Unknown, and callers re-evaluate at higher
 * precision until the question is decided or a precision ceiling is hit.
 */

#include <mpfr.h>

#include <quadlucas/bigint.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace quadlucas {

enum class Trool { False, True, Unknown };

inline const char* to_string(Trool t) {
    switch (t) {
        case Trool::False: return "false";
        case Trool::True: return "true";
        default: return "unknown";
    }
}

class Interval {
public:
    static constexpr long kDefaultPrec = 64;

    explicit Interval(long prec = kDefaultPrec) {
        init(prec);
        mpfr_set_zero(lo_, 0);
        mpfr_set_zero(hi_, 0);
    }

    Interval(const Interval& o) {
        init(mpfr_get_prec(o.lo_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept {
        init(mpfr_get_prec(o.lo_));
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            set_prec(mpfr_get_prec(o.lo_));
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    Interval& operator=(Interval&& o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval exact(long v, long prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static Interval exact(const BigInt& v, long prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, v.raw(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.raw(), MPFR_RNDU);
        return r;
    }
    static Interval exact(const BigRat& v, long prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, v.raw(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.raw(), MPFR_RNDU);
        return r;
    }
    static Interval pi(long prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }
    static Interval entire(long prec = kDefaultPrec) {
        Interval r(prec);
        mpfr_set_inf(r.lo_, -1);
        mpfr_set_inf(r.hi_, +1);
        return r;
    }

    long precision() const { return mpfr_get_prec(lo_); }
    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid() const { return (lower() + upper()) / 2; }
    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

    double width() const {
        mpfr_t w;
        mpfr_init2(w, mpfr_get_prec(lo_));
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }

    bool contains(const BigRat& v) const {
        return mpfr_cmp_q(lo_, v.raw()) <= 0 && mpfr_cmp_q(hi_, v.raw()) >= 0;
    }
    bool contains(double v) const {
        return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
    }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool certainly_positive() const { return mpfr_sgn(lo_) > 0 && mpfr_number_p(lo_); }

    /* endpoints are printed with directed rounding so the printed interval
     * still encloses the value */
    std::string str_lower() const { return fmt(lo_, "%.15RDg"); }
    std::string str_upper() const { return fmt(hi_, "%.15RUg"); }
    std::string str() const { return "[" + str_lower() + ", " + str_upper() + "]"; }

    Interval operator-() const {
        Interval r(precision());
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_t c;
        mpfr_init2(c, r.precision());
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
            mpfr_mul(c, x, y, MPFR_RNDD);
            if (mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
            mpfr_mul(c, x, y, MPFR_RNDU);
            if (mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
        };
        consider(a.lo_, b.hi_);
        consider(a.hi_, b.lo_);
        consider(a.hi_, b.hi_);
        mpfr_clear(c);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) return Interval::entire(join_prec(a, b));
        Interval r(join_prec(a, b));
        mpfr_t c;
        mpfr_init2(c, r.precision());
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
            mpfr_div(c, x, y, MPFR_RNDD);
            if (mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
            mpfr_div(c, x, y, MPFR_RNDU);
            if (mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
        };
        consider(a.lo_, b.hi_);
        consider(a.hi_, b.lo_);
        consider(a.hi_, b.hi_);
        mpfr_clear(c);
        return r;
    }

    friend Interval operator*(const Interval& a, long v) {
        Interval r(a.precision());
        if (v >= 0) {
            mpfr_mul_si(r.lo_, a.lo_, v, MPFR_RNDD);
            mpfr_mul_si(r.hi_, a.hi_, v, MPFR_RNDU);
        } else {
            mpfr_mul_si(r.lo_, a.hi_, v, MPFR_RNDD);
            mpfr_mul_si(r.hi_, a.lo_, v, MPFR_RNDU);
        }
        return r;
    }
    friend Interval operator*(long v, const Interval& a) { return a * v; }
    friend Interval operator/(const Interval& a, long v) {
        if (v == 0) throw std::domain_error("interval: division by zero scalar");
        Interval r(a.precision());
        if (v > 0) {
            mpfr_div_si(r.lo_, a.lo_, v, MPFR_RNDD);
            mpfr_div_si(r.hi_, a.hi_, v, MPFR_RNDU);
        } else {
            mpfr_div_si(r.lo_, a.hi_, v, MPFR_RNDD);
            mpfr_div_si(r.hi_, a.lo_, v, MPFR_RNDU);
        }
        return r;
    }

    /*
     * log on an enclosure of a value known to be positive: a lower endpoint
     * at or below zero widens to -inf rather than failing, so callers recover
     * by raising precision.
     */
    friend Interval log(const Interval& a) {
        if (mpfr_sgn(a.hi_) <= 0)
            throw std::domain_error("interval: log of certainly nonpositive value");
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_) <= 0)
            mpfr_set_inf(r.lo_, -1);
        else
            mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval exp(const Interval& a) {
        Interval r(a.precision());
        mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.hi_) < 0)
            throw std::domain_error("interval: sqrt of certainly negative value");
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_) < 0)
            mpfr_set_zero(r.lo_, 0);
        else
            mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval abs(const Interval& a) {
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_) >= 0) return a;
        if (mpfr_sgn(a.hi_) <= 0) return -a;
        mpfr_set_zero(r.lo_, 0);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        if (mpfr_cmp(a.hi_, r.hi_) > 0) mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval max(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval min(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    /* smallest interval containing both */
    friend Interval hull(const Interval& a, const Interval& b) {
        Interval r(join_prec(a, b));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    /* common refinement of two enclosures of the same value */
    friend Interval intersect(const Interval& a, const Interval& b) {
        if (!overlaps(a, b)) throw std::domain_error("intersect: disjoint intervals");
        Interval r(join_prec(a, b));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    /* a <= b for every pair of points?  resp. definitely violated? */
    friend Trool certainly_le(const Interval& a, const Interval& b) {
        if (mpfr_cmp(a.hi_, b.lo_) <= 0) return Trool::True;
        if (mpfr_cmp(a.lo_, b.hi_) > 0) return Trool::False;
        return Trool::Unknown;
    }
    friend Trool certainly_lt(const Interval& a, const Interval& b) {
        if (mpfr_cmp(a.hi_, b.lo_) < 0) return Trool::True;
        if (mpfr_cmp(a.lo_, b.hi_) >= 0) return Trool::False;
        return Trool::Unknown;
    }
    friend bool overlaps(const Interval& a, const Interval& b) {
        return mpfr_cmp(a.hi_, b.lo_) >= 0 && mpfr_cmp(b.hi_, a.lo_) >= 0;
    }

    static constexpr long kPrecCeiling = 4096;

private:
    void init(long prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
    }
    void set_prec(long prec) {
        mpfr_set_prec(lo_, prec);
        mpfr_set_prec(hi_, prec);
    }
    static long join_prec(const Interval& a, const Interval& b) {
        return std::max(a.precision(), b.precision());
    }
    static std::string fmt(mpfr_srcptr x, const char* spec) {
        char* p = nullptr;
        mpfr_asprintf(&p, spec, x);
        std::string s(p);
        mpfr_free_str(p);
        return s;
    }

    mpfr_t lo_, hi_;
};

/*
 * Re-evaluates a three-valued predicate at doubling precision until it is
 * decided or the ceiling is reached; a residual Unknown means the question
 * is numerically undecidable at the configured ceiling.
 */
template <class F>
inline Trool certify(F&& question, long start = Interval::kDefaultPrec,
                     long ceiling = Interval::kPrecCeiling) {
    for (long p = start; p <= ceiling; p *= 2) {
        Trool t = question(p);
        if (t != Trool::Unknown) return t;
    }
    return Trool::Unknown;
}

}  // namespace quadlucas
