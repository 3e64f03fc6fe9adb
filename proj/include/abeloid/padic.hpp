#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "errors.hpp"
#include "numutil.hpp"

namespace abeloid {

/**
 * Element of Q_p at capped absolute precision.
 *
 * A nonzero value is stored as p^val * unit where unit is a p-adic unit
 * represented by its residue in [1, p^prec); the value is known modulo
 * p^(val + prec), i.e. `prec` counts significant p-adic digits.  The exact
 * zero is a separate state (valuation = +infinity) carrying the absolute
 * precision p^abs to which vanishing is known.
 *
 * Only odd primes are accepted; the residue field is F_p and K = Q_p
 * throughout (trivial Frobenius on coefficients).
 */
class PadicNumber {
public:
    static constexpr int default_precision = 64;

    PadicNumber() : p_(3), zero_(true), val_(0), unit_(0), prec_(default_precision) {}

    // Exact zero known modulo p^abs_prec.
    static PadicNumber zero(const Int &p, int abs_prec = default_precision) {
        require_odd_prime(p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = true;
        x.prec_ = abs_prec;
        return x;
    }

    // p^val * unit with `prec` significant digits; unit must be prime to p.
    static PadicNumber from_unit(const Int &p, const Int &unit, long val, int prec) {
        require_odd_prime(p);
        if (prec < 1) fail(errc::bad_precision, "precision must be >= 1");
        Int u = floor_mod(unit, int_pow(p, prec));
        if (u % p == 0) fail(errc::not_a_unit, "unit part divisible by p");
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.val_ = val;
        x.prec_ = prec;
        x.unit_ = u;
        return x;
    }

    // From residue r known modulo p^abs_prec (absolute precision).
    static PadicNumber from_residue(const Int &p, const Int &r, int abs_prec) {
        require_odd_prime(p);
        if (abs_prec < 1) fail(errc::bad_precision, "absolute precision must be >= 1");
        Int m = int_pow(p, abs_prec);
        Int rr = floor_mod(r, m);
        if (rr == 0) return zero(p, abs_prec);
        long v = int_valuation(rr, p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.val_ = v;
        x.prec_ = abs_prec - static_cast<int>(v);
        x.unit_ = floor_mod(rr / int_pow(p, v), int_pow(p, x.prec_));
        return x;
    }

    const Int &prime() const { return p_; }
    bool is_zero() const { return zero_; }

    // Valuation of a nonzero element; exact zero has no finite valuation.
    long valuation() const {
        if (zero_) fail(errc::internal, "valuation() of exact zero (infinite)");
        return val_;
    }

    // Significant digits for nonzero values, absolute known precision for zero.
    int precision() const { return prec_; }

    // Absolute precision: the value is known modulo p^abs_precision().
    long abs_precision() const { return zero_ ? prec_ : val_ + prec_; }

    // Residue of p^(-shift) * x modulo p^k (requires val_ - shift >= 0).
    Int shifted_residue(long shift, long k) const {
        Int m = int_pow(p_, static_cast<unsigned long>(k));
        if (zero_) return 0;
        long v = val_ - shift;
        if (v < 0) fail(errc::internal, "negative shift residue");
        Int r = unit_ * int_pow(p_, static_cast<unsigned long>(v));
        return floor_mod(r, m);
    }

    // Unit part residue in [1, p^prec); only for nonzero values.
    const Int &unit() const {
        if (zero_) fail(errc::not_a_unit, "exact zero has no unit part");
        return unit_;
    }

    bool is_unit() const { return !zero_ && val_ == 0; }

    // Integer (Z_p) elements: valuation >= 0.
    bool is_integral() const { return zero_ || val_ >= 0; }

    PadicNumber operator-() const {
        if (zero_) return *this;
        PadicNumber r = *this;
        r.unit_ = floor_mod(-unit_, int_pow(p_, prec_));
        return r;
    }

    friend PadicNumber operator+(const PadicNumber &a, const PadicNumber &b) {
        a.check_same_prime(b);
        if (a.zero_ && b.zero_)
            return zero(a.p_, static_cast<int>(std::min(a.abs_precision(), b.abs_precision())));
        // Work with residues scaled by p^(-m) so everything is integral.
        long m = 0;
        if (!a.zero_) m = std::min(m, a.val_);
        if (!b.zero_) m = std::min(m, b.val_);
        long K = std::min(a.abs_precision(), b.abs_precision()) - m;
        if (K < 1) fail(errc::precision_exhausted, "no shared digits in addition");
        Int s = floor_mod(a.shifted_residue(m, K) + b.shifted_residue(m, K),
                          int_pow(p_of(a, b), static_cast<unsigned long>(K)));
        PadicNumber r = from_residue(p_of(a, b), s, static_cast<int>(K));
        if (!r.zero_) r.val_ += m;
        else r.prec_ = static_cast<int>(K + m);
        return r;
    }

    friend PadicNumber operator-(const PadicNumber &a, const PadicNumber &b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber &a, const PadicNumber &b) {
        a.check_same_prime(b);
        if (a.zero_ || b.zero_) {
            // x = 0 mod p^A times y with val v: product is 0 mod p^(A+v).
            long A;
            if (a.zero_ && b.zero_) A = a.prec_ + static_cast<long>(b.prec_);
            else if (a.zero_) A = a.prec_ + b.val_;
            else A = b.prec_ + a.val_;
            return zero(a.p_, static_cast<int>(std::max<long>(A, 1)));
        }
        PadicNumber r;
        r.p_ = a.p_;
        r.zero_ = false;
        r.val_ = a.val_ + b.val_;
        r.prec_ = std::min(a.prec_, b.prec_);
        r.unit_ = floor_mod(a.unit_ * b.unit_, int_pow(a.p_, r.prec_));
        return r;
    }

    PadicNumber inverse() const {
        if (zero_) fail(errc::div_by_zero, "inverse of zero");
        PadicNumber r;
        r.p_ = p_;
        r.zero_ = false;
        r.val_ = -val_;
        r.prec_ = prec_;
        r.unit_ = mod_inverse(unit_, int_pow(p_, prec_));
        return r;
    }

    friend PadicNumber operator/(const PadicNumber &a, const PadicNumber &b) {
        if (b.zero_) fail(errc::div_by_zero, "division by zero");
        return a * b.inverse();
    }

    // Equality of residues at the shared known precision.
    friend bool operator==(const PadicNumber &a, const PadicNumber &b) {
        a.check_same_prime(b);
        long m = 0;
        if (!a.zero_) m = std::min(m, a.val_);
        if (!b.zero_) m = std::min(m, b.val_);
        long K = std::min(a.abs_precision(), b.abs_precision()) - m;
        if (K < 1) fail(errc::precision_exhausted, "no shared digits to compare");
        return a.shifted_residue(m, K) == b.shifted_residue(m, K);
    }

    friend bool operator!=(const PadicNumber &a, const PadicNumber &b) { return !(a == b); }

    // Truncate to absolute precision p^abs (keeps the value, drops digits).
    PadicNumber truncated(long abs) const {
        if (abs < 1) fail(errc::bad_precision, "truncate below one digit");
        if (zero_) return zero(p_, static_cast<int>(std::min<long>(abs, prec_)));
        if (val_ + prec_ <= abs) return *this;
        if (abs <= val_) return zero(p_, static_cast<int>(abs));
        PadicNumber r = *this;
        r.prec_ = static_cast<int>(abs - val_);
        r.unit_ = floor_mod(unit_, int_pow(p_, r.prec_));
        return r;
    }

    std::string str() const {
        if (zero_) return "0 + O(" + p_.str() + "^" + std::to_string(prec_) + ")";
        std::string s;
        if (val_ != 0) s = p_.str() + "^" + std::to_string(val_) + " * ";
        s += unit_.str();
        s += " + O(" + p_.str() + "^" + std::to_string(abs_precision()) + ")";
        return s;
    }

private:
    static const Int &p_of(const PadicNumber &a, const PadicNumber &b) { return a.p_; }

    void check_same_prime(const PadicNumber &o) const {
        if (p_ != o.p_) fail(errc::shape_mismatch, "operands over different primes");
    }

    Int p_;
    bool zero_;
    long val_;
    Int unit_;
    int prec_;
};

/**
 * Digit-loss audit for a single arithmetic step.  `cancelled` counts the
 * leading digits lost to cancellation in additive operations; result
 * precision is the significant-digit count of the output.
 */
struct PrecisionReport {
    std::string op;
    long input_precision = 0;  // min significant digits among inputs
    long result_precision = 0;
    long cancelled = 0;
};

inline Rational rational_pow(const Rational &q, long e) {
    if (e >= 0) return make_rat(int_pow(num(q), static_cast<unsigned long>(e)),
                                int_pow(den(q), static_cast<unsigned long>(e)));
    if (q == 0) fail(errc::div_by_zero, "0^negative");
    return make_rat(int_pow(den(q), static_cast<unsigned long>(-e)),
                    int_pow(num(q), static_cast<unsigned long>(-e)));
}

// Embed an exact rational into Q_p with N significant digits.
inline PadicNumber make_padic(const Rational &q, const Int &p, int N = PadicNumber::default_precision) {
    require_odd_prime(p);
    if (N < 1) fail(errc::bad_precision, "precision must be >= 1");
    if (q == 0) return PadicNumber::zero(p, N);
    long v = rat_valuation(q, p);
    Rational u = q / rational_pow(Rational(p), v);
    Int m = int_pow(p, N);
    return PadicNumber::from_unit(p, rat_mod(u, m), v, N);
}

// Arithmetic with a digit-loss audit attached.
inline PadicNumber add_reported(const PadicNumber &a, const PadicNumber &b, PrecisionReport &rep) {
    PadicNumber r = a + b;
    rep.op = "add";
    rep.input_precision = std::min(a.precision(), b.precision());
    rep.result_precision = r.precision();
    // Leading digits lost relative to the smallest input valuation.
    long vmin = 0;
    bool have = false;
    for (const PadicNumber *x : {&a, &b}) {
        if (!x->is_zero()) {
            vmin = have ? std::min(vmin, x->valuation()) : x->valuation();
            have = true;
        }
    }
    if (!have) rep.cancelled = 0;
    else if (r.is_zero()) rep.cancelled = r.abs_precision() - vmin;
    else rep.cancelled = r.valuation() - vmin;
    return r;
}

inline PadicNumber sub_reported(const PadicNumber &a, const PadicNumber &b, PrecisionReport &rep) {
    PadicNumber r = add_reported(a, -b, rep);
    rep.op = "sub";
    return r;
}

inline PadicNumber mul_reported(const PadicNumber &a, const PadicNumber &b, PrecisionReport &rep) {
    PadicNumber r = a * b;
    rep.op = "mul";
    rep.input_precision = std::min(a.precision(), b.precision());
    rep.result_precision = r.precision();
    rep.cancelled = 0;
    return r;
}

inline PadicNumber div_reported(const PadicNumber &a, const PadicNumber &b, PrecisionReport &rep) {
    PadicNumber r = a / b;
    rep.op = "div";
    rep.input_precision = std::min(a.precision(), b.precision());
    rep.result_precision = r.precision();
    rep.cancelled = 0;
    return r;
}

/**
 * Teichmuller representative: the unique (p-1)-st root of unity congruent
 * to x modulo p, computed by iterating a -> a^p until the fixpoint.
 */
inline PadicNumber teichmuller(const PadicNumber &x) {
    if (!x.is_unit()) fail(errc::not_a_unit, "teichmuller needs a p-adic unit");
    const Int &p = x.prime();
    int N = x.precision();
    Int m = int_pow(p, N);
    Int a = x.unit() % m;
    for (int i = 0; i < 2 * N + 4; ++i) {
        Int b = mod_pow(a, p, m);
        if (b == a) return PadicNumber::from_unit(p, a, 0, N);
        a = b;
    }
    fail(errc::internal, "teichmuller iteration did not converge");
}

inline long ilog(const Int &p, long n) {
    long k = 0;
    Int pw = 1;
    while (pw <= n) { pw *= p; ++k; }
    return k - 1; // floor(log_p n)
}

/**
 * Iwasawa-branch logarithm on Q_p^x: write x = p^v * omega * u with omega
 * the Teichmuller part and u a principal unit, set log(p) = log(omega) = 0
 * and evaluate log(u) = sum_{n>=1} (-1)^(n+1) (u-1)^n / n.  The series is
 * summed with guard digits and the result reported to absolute precision
 * p^N, so additivity holds digit-exactly at that precision.
 */
inline PadicNumber iwasawa_log(const PadicNumber &x) {
    if (x.is_zero()) fail(errc::div_by_zero, "log of zero");
    const Int &p = x.prime();
    int N = x.precision();
    // Guard digits cover every division by p | n in the series.
    long guard = ilog(p, std::max(4L, 2L * N)) + 3;
    long M = N + guard;
    Int mod = int_pow(p, static_cast<unsigned long>(M));
    Int u = floor_mod(x.unit(), mod);
    // Strip the Teichmuller part at working precision.
    Int w = u % mod;
    for (long i = 0; i < 2 * M + 4; ++i) {
        Int w2 = mod_pow(w, p, mod);
        if (w2 == w) break;
        w = w2;
    }
    u = u * mod_inverse(w, mod) % mod;
    Int z = floor_mod(u - 1, mod);
    if (z == 0) return PadicNumber::zero(p, N);
    long vz = int_valuation(z, p);
    Int acc = 0;
    Int zn = 1;
    for (long n = 1; n * vz - ilog(p, n) < M; ++n) {
        zn = zn * z % mod;
        long vn = 0;
        Int nn = n;
        while (nn % p == 0) { nn /= p; ++vn; }
        Int term = zn / int_pow(p, static_cast<unsigned long>(vn));
        term = term * mod_inverse(nn, mod) % mod;
        if (n % 2 == 0) term = mod - term;
        acc = (acc + term) % mod;
    }
    return PadicNumber::from_residue(p, acc, static_cast<int>(M)).truncated(N);
}

/**
 * Square root in Q_p by Hensel lifting: brute-force the residue mod p and
 * refine with the Newton step x -> (x + d/x)/2.  The returned root is the
 * one whose residue mod p lies in {1, ..., (p-1)/2}.
 */
inline PadicNumber hensel_sqrt(const PadicNumber &d) {
    if (d.is_zero()) return d;
    const Int &p = d.prime();
    if (d.valuation() % 2 != 0)
        fail(errc::non_residue, "odd valuation: no square root in Q_p");
    int N = d.precision();
    Int m = int_pow(p, N);
    Int u = d.unit() % m;
    Int r0 = 0;
    for (Int r = 1; r < p; ++r) {
        if (r * r % p == u % p) { r0 = r; break; }
    }
    if (r0 == 0) fail(errc::non_residue, "residue " + (u % p).str() + " is not a square mod " + p.str());
    Int x = r0;
    Int inv2 = mod_inverse(2, m);
    for (long k = 1; k < 2 * N; k *= 2) {
        x = (x + u * mod_inverse(x, m)) % m * inv2 % m;
    }
    // One extra pass guarantees x^2 = u mod p^N.
    x = (x + u * mod_inverse(x, m)) % m * inv2 % m;
    if (floor_mod(x, p) > (p - 1) / 2) x = floor_mod(-x, m);
    return PadicNumber::from_unit(p, x, d.valuation() / 2, N);
}

inline Int default_height_bound(const Int &p, int eff) {
    // Largest H with 2H^2 < p^eff.
    Int m = int_pow(p, eff);
    Int lo = 0, hi = m;
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (2 * mid * mid < m) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

/**
 * Rational reconstruction by half-extended Euclid on (lift, p^eff): returns
 * the unique a/b with |a|, |b| <= H congruent to x, or nullopt when no such
 * fraction exists.  A nullopt is evidence of irrationality at this height,
 * never a proof.  Requires 2H^2 < p^eff.
 */
inline std::optional<Rational> rational_reconstruct(const PadicNumber &x, Int H = 0) {
    if (x.is_zero()) return Rational(0);
    const Int &p = x.prime();
    int eff = x.precision();
    Int m = int_pow(p, eff);
    if (H == 0) H = default_height_bound(p, eff);
    if (H < 1 || 2 * H * H >= m)
        fail(errc::height_too_large, "need 2H^2 < p^" + std::to_string(eff));
    Int r0 = m, t0 = 0, r1 = x.unit() % m, t1 = 1;
    while (r1 > H) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; t0 = t1; r1 = r2; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int a = r1, b = t1;
    if (b < 0) { a = -a; b = -b; }
    if (b > H) return std::nullopt;
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(a), b);
    if (g != 1) return std::nullopt;
    if (b % p == 0) return std::nullopt;
    Rational unit_val = make_rat(a, b);
    return unit_val * rational_pow(Rational(p), x.valuation());
}

} // namespace abeloid
