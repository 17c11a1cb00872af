#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace adl {

using Int = mpz_class;
using Rat = mpq_class;

// Library-wide error type; every validation failure carries a precise message.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

// Floor of an exact rational.
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// Fractional part in [0,1).
inline Rat rat_mod1(const Rat& x) {
    Rat r = x - Rat(rat_floor(x));
    r.canonicalize();
    return r;
}

// Reduced fraction. The raw two-argument mpq_class constructor leaves the
// value uncanonicalized, which silently breaks later GMP arithmetic, so all
// fraction construction goes through here.
inline Rat make_rat(const Int& num, const Int& den) {
    require(den != 0, "make_rat: zero denominator");
    Rat r{num, den};
    r.canonicalize();
    return r;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

inline double rat_to_double(const Rat& x) { return x.get_d(); }

inline std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// Complex number with exact rational real and imaginary parts. Used for Weyl
// coefficients so that *-algebra identities stay exact under products and sums.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat conj() const { return {re, -im}; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    // Multiply by i^q for an integer quarter-turn count q.
    GaussRat times_i_pow(long q) const {
        long r = ((q % 4) + 4) % 4;
        switch (r) {
            case 0: return *this;
            case 1: return {-im, re};
            case 2: return {-re, -im};
            default: return {im, -re};
        }
    }
};

}  // namespace adl
