#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace abeloid {

// Expression templates are disabled so intermediate results behave like
// plain values (operator results are Int, not lazy expression objects).
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Int num(const Rational &q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational &q) { return boost::multiprecision::denominator(q); }

// a/b with the sign normalised onto the numerator (the two-argument
// cpp_rational constructor rejects negative denominators).
inline Rational make_rat(Int a, Int b) {
    if (b == 0) fail(errc::div_by_zero, "zero denominator");
    if (b < 0) { a = -a; b = -b; }
    return Rational(a, b);
}

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int floor_mod(const Int &a, const Int &m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Extended gcd: returns g and fills x, y with a*x + b*y = g (g >= 0).
inline Int ext_gcd(const Int &a, const Int &b, Int &x, Int &y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    x = old_s;
    y = old_t;
    return old_r;
}

inline Int mod_inverse(const Int &a, const Int &m) {
    Int x, y;
    Int g = ext_gcd(floor_mod(a, m), m, x, y);
    if (g != 1) fail(errc::not_a_unit, "element not invertible modulo " + m.str());
    return floor_mod(x, m);
}

inline Int mod_pow(Int base, Int e, const Int &m) {
    base = floor_mod(base, m);
    Int r = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

// p-adic valuation of a nonzero integer.
inline long int_valuation(Int n, const Int &p) {
    if (n == 0) fail(errc::internal, "valuation of zero integer");
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// p-adic valuation of a nonzero rational.
inline long rat_valuation(const Rational &q, const Int &p) {
    if (q == 0) fail(errc::internal, "valuation of zero rational");
    Int n = num(q), d = den(q);
    long v = 0;
    if (n % p == 0) v = int_valuation(n, p);
    else if (d % p == 0) v = -int_valuation(d, p);
    return v;
}

inline bool is_prime(const Int &n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_odd_prime(const Int &p) {
    if (p == 2) fail(errc::even_prime, "p = 2 is not supported (odd primes only)");
    if (p < 3 || !is_prime(p)) fail(errc::even_prime, "p must be an odd prime, got " + p.str());
}

// Trial-division factorisation; the numbers we see are human-scale.
inline std::map<Int, long> factorize(Int n) {
    std::map<Int, long> f;
    if (n < 0) n = -n;
    if (n == 0) fail(errc::internal, "factorize(0)");
    for (Int d = 2; d * d <= n; ++d) {
        while (n % d == 0) { ++f[d]; n /= d; }
    }
    if (n > 1) ++f[n];
    return f;
}

// Write q = s^2 * d with d squarefree (sign carried by d); returns {d, s} with s > 0 rational.
inline std::pair<Int, Rational> squarefree_decompose(const Rational &q) {
    if (q == 0) return {Int(0), Rational(0)};
    Int n = num(q), d = den(q);
    // sqrt(n/d) = sqrt(n*d)/d
    Int nd = n * d;
    bool neg = nd < 0;
    if (neg) nd = -nd;
    Int core = 1, sq = 1;
    for (auto &[pr, e] : factorize(nd)) {
        if (e % 2) core *= pr;
        sq *= int_pow(pr, static_cast<unsigned long>(e / 2));
    }
    if (neg) core = -core;
    return {core, Rational(sq, d)};
}

// Smallest primitive root modulo an odd prime p.
inline Int primitive_root(const Int &p) {
    std::vector<Int> prime_factors;
    for (auto &[q, e] : factorize(p - 1)) prime_factors.push_back(q);
    for (Int g = 2; g < p; ++g) {
        bool ok = true;
        for (const Int &q : prime_factors) {
            if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    fail(errc::internal, "no primitive root found mod " + p.str());
}

inline Int rat_floor(const Rational &q) {
    Int n = num(q), d = den(q);
    Int f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

inline bool is_integer(const Rational &q) { return den(q) == 1; }

// q mod m for rational q with denominator coprime to m, result in [0, m).
inline Int rat_mod(const Rational &q, const Int &m) {
    return floor_mod(num(q) * mod_inverse(den(q), m), m);
}

} // namespace abeloid
