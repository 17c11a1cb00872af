#pragma once

#include <cmath>
#include <string>

#include "adl/arith.hpp"

namespace adl {

// A value in the circle group R/Z. Exact values are reduced fractions in
// [0,1); approximate values are doubles in [0,1) compared with wraparound
// distance. Arithmetic stays exact as long as every operand is exact.
class CircleValue {
  public:
    CircleValue() : exact_(true), rat_(0), approx_(0.0) {}

    static CircleValue exact(Rat v) {
        CircleValue c;
        c.exact_ = true;
        c.rat_ = rat_mod1(v);
        c.approx_ = rat_to_double(c.rat_);
        return c;
    }

    static CircleValue approx(double v) {
        CircleValue c;
        c.exact_ = false;
        c.rat_ = 0;
        c.approx_ = wrap(v);
        return c;
    }

    static CircleValue zero() { return CircleValue(); }

    bool is_exact() const { return exact_; }

    // Exact representative in [0,1); only meaningful for exact values.
    const Rat& rational() const {
        require(exact_, "CircleValue: rational() called on an approximate value");
        return rat_;
    }

    double value() const { return exact_ ? rat_to_double(rat_) : approx_; }

    CircleValue operator+(const CircleValue& o) const {
        if (exact_ && o.exact_) return exact(rat_ + o.rat_);
        return approx(value() + o.value());
    }

    CircleValue operator-(const CircleValue& o) const {
        if (exact_ && o.exact_) return exact(rat_ - o.rat_);
        return approx(value() - o.value());
    }

    CircleValue operator-() const {
        if (exact_) return exact(-rat_);
        return approx(-approx_);
    }

    CircleValue scaled(const Int& n) const {
        if (exact_) return exact(Rat(n) * rat_);
        return approx(mpz_get_d(n.get_mpz_t()) * approx_);
    }

    // Wraparound distance min(|a-b|, 1-|a-b|) on the double views.
    static double distance(const CircleValue& a, const CircleValue& b) {
        double d = std::fabs(wrap(a.value()) - wrap(b.value()));
        return std::min(d, 1.0 - d);
    }

    // Exact pairs compare as reduced fractions; anything approximate compares
    // within tol across the wraparound.
    static bool eq(const CircleValue& a, const CircleValue& b, double tol = 1e-9) {
        if (a.exact_ && b.exact_) return a.rat_ == b.rat_;
        return distance(a, b) <= tol;
    }

    bool is_zero(double tol = 1e-9) const { return eq(*this, zero(), tol); }

    std::string str() const {
        if (exact_) return rat_to_string(rat_);
        return std::to_string(approx_);
    }

  private:
    static double wrap(double v) {
        double r = v - std::floor(v);
        if (r >= 1.0) r -= 1.0;  // guard against floor rounding at the seam
        return r;
    }

    bool exact_;
    Rat rat_;
    double approx_;
};

}  // namespace adl
