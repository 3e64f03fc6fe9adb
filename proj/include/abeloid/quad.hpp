#pragma once

#include <string>

#include "padic.hpp"

namespace abeloid {

/**
 * Element a + b*sqrt(d) of a quadratic extension Q(sqrt(d)) with d a
 * squarefree integer (d = 0 encodes a plain rational, b = 0).  Exponents in
 * the multiplicative-coordinate layer live here: the counterexample
 * construction needs exact arithmetic with numbers like -4*sqrt(-3), and
 * splitting linear systems into rational and surd components is what turns
 * "reconstruction failed" heuristics into certified rationality statements.
 *
 * Mixing two different surds in one computation is rejected: every context
 * carries at most one d.
 */
class Quad {
public:
    Quad() : a_(0), b_(0), d_(0) {}
    Quad(const Rational &a) : a_(a), b_(0), d_(0) {}
    Quad(const Rational &a, const Rational &b, const Int &d) : a_(a), b_(b), d_(d) {
        normalize();
    }

    static Quad sqrt_of(const Rational &q) {
        if (q == 0) return Quad();
        auto [core, scale] = squarefree_decompose(q);
        if (core == 1) return Quad(scale);
        return Quad(Rational(0), scale, core);
    }

    const Rational &rat() const { return a_; }
    const Rational &surd() const { return b_; }
    const Int &d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    // Exact rational value; caller must have checked is_rational().
    const Rational &as_rational() const {
        if (b_ != 0) fail(errc::illegal_exponent, "value has an irrational part");
        return a_;
    }

    friend Quad operator+(const Quad &x, const Quad &y) {
        Int d = merge_d(x, y);
        return Quad(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Quad operator-(const Quad &x, const Quad &y) { return x + (-y); }
    Quad operator-() const { return Quad(-a_, -b_, d_); }

    friend Quad operator*(const Quad &x, const Quad &y) {
        Int d = merge_d(x, y);
        return Quad(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d),
                    x.a_ * y.b_ + x.b_ * y.a_, d);
    }

    Quad inverse() const {
        Rational n = a_ * a_ - b_ * b_ * Rational(d_);
        if (n == 0) fail(errc::div_by_zero, "inverse of zero (or degenerate norm)");
        return Quad(a_ / n, -b_ / n, d_);
    }

    friend Quad operator/(const Quad &x, const Quad &y) { return x * y.inverse(); }

    friend bool operator==(const Quad &x, const Quad &y) {
        if (x.a_ != y.a_ || x.b_ != y.b_) return false;
        return x.b_ == 0 || x.d_ == y.d_;
    }
    friend bool operator!=(const Quad &x, const Quad &y) { return !(x == y); }
    friend bool operator<(const Quad &x, const Quad &y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        if (x.b_ != y.b_) return x.b_ < y.b_;
        return x.d_ < y.d_;
    }

    // Numeric image in Q_p; requires sqrt(d) to exist there.
    PadicNumber eval(const Int &p, int N) const {
        PadicNumber r = make_padic(a_, p, N);
        if (b_ == 0) return r;
        PadicNumber s = hensel_sqrt(make_padic(Rational(d_), p, N));
        return r + make_padic(b_, p, N) * s;
    }

    std::string str() const {
        if (b_ == 0) return a_.str();
        std::string s = (a_ == 0) ? "" : a_.str() + " + ";
        return s + b_.str() + "*sqrt(" + d_.str() + ")";
    }

private:
    void normalize() {
        if (b_ == 0) d_ = 0;
        if (d_ == 0) b_ = 0;
        if (d_ == 1) { a_ += b_; b_ = 0; d_ = 0; }
    }

    static Int merge_d(const Quad &x, const Quad &y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
        fail(errc::illegal_exponent,
             "mixed surds sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ")");
    }

    Rational a_, b_;
    Int d_;
};

} // namespace abeloid
