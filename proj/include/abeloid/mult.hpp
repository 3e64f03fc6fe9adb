#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>

#include "sym.hpp"

namespace abeloid {

/**
 * Shared coordinate frame for elements of Q_p^x.
 *
 * Every element is written zeta^z * p^e * prod_s u_s^(t_s) where zeta is
 * the Teichmuller lift of the smallest primitive root mod p, and the u_s
 * are declared principal-unit generators.  The built-in generator "u0" is
 * 1+p; a rational entry contributes one generator "q<l>" per prime l != p
 * in its factorisation (the principal part of l).  Multiplicative
 * independence of the declared generators is an input assumption recorded
 * here, not something the library verifies.
 */
class GeneratorManifest {
public:
    struct UnitInfo {
        std::string definition; // human-readable origin
        PadicNumber coord;      // log(u)/log(1+p), a p-adic integer
        PadicNumber logval;     // iwasawa_log(u)
    };

    GeneratorManifest(const Int &p, int precision = PadicNumber::default_precision)
        : p_(p), prec_(precision) {
        require_odd_prime(p);
        if (precision < 8) fail(errc::bad_precision, "manifest precision must be >= 8");
        root_ = primitive_root(p);
        zeta_ = teichmuller(make_padic(Rational(root_), p, precision));
        PadicNumber one_plus_p = make_padic(Rational(p + 1), p, precision);
        log1p_ = iwasawa_log(one_plus_p);
        units_["u0"] = UnitInfo{"(1+p)", make_padic(Rational(1), p, precision), log1p_};
    }

    const Int &prime() const { return p_; }
    int precision() const { return prec_; }
    const Int &root() const { return root_; }
    const PadicNumber &zeta() const { return zeta_; }
    const PadicNumber &log_one_plus_p() const { return log1p_; }

    bool has_unit(const std::string &s) const { return units_.count(s) != 0; }

    const UnitInfo &unit(const std::string &s) const {
        auto it = units_.find(s);
        if (it == units_.end()) fail(errc::generator_mismatch, "unknown unit symbol " + s);
        return it->second;
    }

    // Declare a principal-unit generator by its numeric value.
    void declare_unit(const std::string &name, const PadicNumber &value,
                      const std::string &definition) {
        if (units_.count(name)) return;
        if (!value.is_unit()) fail(errc::not_a_unit, "generator " + name + " must be a unit");
        PadicNumber lg = iwasawa_log(value);
        units_[name] = UnitInfo{definition, lg / log1p_, lg};
    }

    // Generator for the principal part of a rational prime l != p.
    std::string declare_prime(const Int &l) {
        std::string name = "q" + l.str();
        if (!units_.count(name)) {
            PadicNumber lval = make_padic(Rational(l), p_, prec_);
            PadicNumber principal = lval / teichmuller(lval);
            declare_unit(name, principal, "principal part of " + l.str());
        }
        return name;
    }

    // Discrete log of the Teichmuller character: k with g^k = a mod p.
    Int zeta_dlog(const Int &a) const {
        Int target = floor_mod(a, p_);
        Int x = 1;
        for (Int k = 0; k < p_ - 1; ++k) {
            if (x == target) return k;
            x = x * root_ % p_;
        }
        fail(errc::not_a_unit, "discrete log of a non-unit residue");
    }

    const std::map<std::string, UnitInfo> &units() const { return units_; }

private:
    Int p_;
    int prec_;
    Int root_;
    PadicNumber zeta_;
    PadicNumber log1p_;
    std::map<std::string, UnitInfo> units_;
};

using ManifestPtr = std::shared_ptr<GeneratorManifest>;

/**
 * Element of Q_p^x (or of its finite-level completions, transiently) in
 * multiplicative coordinates over a shared manifest.  zeta_exp is an
 * integer mod p-1; p_exp and the unit exponents are exact Q(sqrt(d))
 * numbers.  An element is "genuine" when p_exp is a plain integer.
 */
class MultElement {
public:
    explicit MultElement(ManifestPtr man)
        : man_(std::move(man)), zeta_(0), p_exp_(Rational(0)) {}

    static MultElement one(ManifestPtr man) { return MultElement(std::move(man)); }

    static MultElement p_power(ManifestPtr man, const Rational &e) {
        MultElement x(std::move(man));
        x.p_exp_ = Quad(e);
        return x;
    }

    static MultElement zeta_power(ManifestPtr man, const Int &k) {
        MultElement x(std::move(man));
        x.zeta_ = floor_mod(k, x.man_->prime() - 1);
        return x;
    }

    static MultElement unit_symbol(ManifestPtr man, const std::string &name,
                                   const Quad &e = Quad(Rational(1))) {
        MultElement x(std::move(man));
        x.man_->unit(name); // existence check
        if (!e.is_zero()) x.units_[name] = e;
        return x;
    }

    // Canonical decomposition of a nonzero rational.
    static MultElement from_rational(ManifestPtr man, const Rational &r) {
        if (r == 0) fail(errc::div_by_zero, "0 is not in Q_p^x");
        MultElement x(man);
        const Int &p = man->prime();
        if (r < 0) x.zeta_ = (p - 1) / 2; // -1 = zeta^((p-1)/2)
        Int n = num(r), d = den(r);
        if (n < 0) n = -n;
        for (auto &[l, e] : factorize(n)) x.mul_prime_power(l, e);
        for (auto &[l, e] : factorize(d)) x.mul_prime_power(l, -e);
        return x;
    }

    const ManifestPtr &manifest() const { return man_; }
    const Int &zeta_exp() const { return zeta_; }
    const Quad &p_exp() const { return p_exp_; }
    const std::map<std::string, Quad> &unit_exp() const { return units_; }

    bool is_genuine() const { return p_exp_.is_rational() && is_integer(p_exp_.as_rational()); }

    friend MultElement operator*(const MultElement &x, const MultElement &y) {
        x.check_same(y);
        MultElement r = x;
        r.zeta_ = floor_mod(r.zeta_ + y.zeta_, r.man_->prime() - 1);
        r.p_exp_ = r.p_exp_ + y.p_exp_;
        for (auto &[s, e] : y.units_) r.add_unit(s, e);
        return r;
    }

    MultElement inverse() const { return pow(Rational(-1)); }

    friend MultElement operator/(const MultElement &x, const MultElement &y) {
        return x * y.inverse();
    }

    /**
     * x^e for exact e in Q(sqrt(d)).  A non-integral rational e needs
     * zeta_exp * e integral (no fractional roots of unity); an irrational
     * (p-adic integer) e is only defined on elements with trivial torsion
     * and p-part.  `completion` relaxes the latter: inside the pro-p
     * completion p^(Z_p) makes sense, which is what the basis-change
     * construction of the counterexample needs transiently.
     */
    MultElement pow(const Quad &e, bool completion = false) const {
        MultElement r(man_);
        if (!e.is_rational()) {
            // The exponent must be a p-adic integer, i.e. sqrt(d) must exist.
            hensel_sqrt(make_padic(Rational(e.d()), man_->prime(), man_->precision()));
            if (zeta_ != 0)
                fail(errc::padic_exponent_on_nonunit,
                     "irrational exponent on an element with torsion part");
            if (!p_exp_.is_zero() && !completion)
                fail(errc::padic_exponent_on_nonunit,
                     "irrational exponent on an element with p-part");
        } else {
            Rational ze = Rational(zeta_) * e.as_rational();
            if (!is_integer(ze))
                fail(errc::fractional_torsion,
                     "exponent " + e.str() + " would need a fractional power of zeta");
            r.zeta_ = floor_mod(num(ze), man_->prime() - 1);
        }
        r.p_exp_ = p_exp_ * e;
        for (auto &[s, t] : units_) r.add_unit(s, t * e);
        return r;
    }

    friend bool operator==(const MultElement &x, const MultElement &y) {
        x.check_same(y);
        return x.zeta_ == y.zeta_ && x.p_exp_ == y.p_exp_ && x.units_ == y.units_;
    }
    friend bool operator!=(const MultElement &x, const MultElement &y) { return !(x == y); }

    // ord_p: the p-exponent (rational for genuine elements).
    const Quad &ord() const { return p_exp_; }

    // Numeric coordinate w.r.t. 1+p of the principal-unit part.
    PadicNumber unit_coord() const {
        const Int &p = man_->prime();
        int N = man_->precision();
        PadicNumber acc = PadicNumber::zero(p, N);
        for (auto &[s, e] : units_)
            acc = acc + e.eval(p, N) * man_->unit(s).coord;
        return acc;
    }

    // Iwasawa log, numerically.
    PadicNumber log() const {
        PadicNumber t = unit_coord();
        return t * man_->log_one_plus_p();
    }

    // Iwasawa log as a symbolic constant in the symbols "log:<unit>".
    Sym log_sym() const {
        Sym acc;
        for (auto &[s, e] : units_)
            acc = acc + Sym::symbol("log:" + s, e);
        return acc;
    }

    std::string str() const {
        std::string out;
        auto emit = [&out](const std::string &piece) {
            if (!out.empty()) out += " * ";
            out += piece;
        };
        if (zeta_ != 0) emit("zeta^" + zeta_.str());
        if (!p_exp_.is_zero()) emit("p^(" + p_exp_.str() + ")");
        for (auto &[s, e] : units_) {
            // Prime generators print by symbol name (q2, q5, ...): the
            // rational base would re-contribute its Teichmuller character.
            std::string base = (s == "u0") ? "(1+p)" : s;
            emit(base + "^(" + e.str() + ")");
        }
        if (out.empty()) out = "1";
        return out;
    }

private:
    void check_same(const MultElement &o) const {
        if (man_ != o.man_)
            fail(errc::generator_mismatch, "elements built over different manifests");
    }

    void add_unit(const std::string &s, const Quad &e) {
        auto it = units_.find(s);
        if (it == units_.end()) {
            if (!e.is_zero()) units_[s] = e;
            return;
        }
        Quad v = it->second + e;
        if (v.is_zero()) units_.erase(it);
        else it->second = v;
    }

    void mul_prime_power(const Int &l, long e) {
        const Int &p = man_->prime();
        if (l == p) {
            p_exp_ = p_exp_ + Quad(Rational(e));
            return;
        }
        zeta_ = floor_mod(zeta_ + Int(e) * man_->zeta_dlog(l), p - 1);
        std::string s = man_->declare_prime(l);
        add_unit(s, Quad(Rational(e)));
    }

    ManifestPtr man_;
    Int zeta_;
    Quad p_exp_;
    std::map<std::string, Quad> units_;
};

/**
 * Image of an element in the gamma_l completion of Q_p^x.
 *
 * For l = p nothing is lost (the kernel mu_{p^infinity} is trivial), so
 * all three coordinate groups survive with torsion mod p-1.  For l != p
 * the principal-unit coordinate dies and the torsion survives only modulo
 * the prime-to-l part of p-1; the p-exponent is then read in Z_l.
 */
struct CompletionElement {
    Int ell;
    Int torsion;     // residue modulo torsion_mod
    Int torsion_mod; // p-1 if ell = p, else prime-to-l part of p-1
    Quad p_exp;
    std::map<std::string, Quad> unit_exp; // empty when ell != p
};

inline Int prime_to_l_part(Int n, const Int &l) {
    while (n % l == 0) n /= l;
    return n;
}

inline CompletionElement gamma(const Int &ell, const MultElement &x) {
    const Int &p = x.manifest()->prime();
    if (!is_prime(ell)) fail(errc::bad_input, "l must be prime");
    CompletionElement c;
    c.ell = ell;
    c.p_exp = x.p_exp();
    if (ell == p) {
        c.torsion_mod = p - 1;
        c.torsion = floor_mod(x.zeta_exp(), c.torsion_mod);
        c.unit_exp = x.unit_exp();
    } else {
        c.torsion_mod = prime_to_l_part(p - 1, ell);
        c.torsion = floor_mod(x.zeta_exp(), c.torsion_mod);
        // p_exp must make sense in Z_l: denominator prime to l.
        if (c.p_exp.is_rational() && den(c.p_exp.as_rational()) % ell == 0)
            fail(errc::illegal_exponent, "p-exponent not l-integral");
    }
    return c;
}

/**
 * Recursive-descent parser for the entry grammar
 *
 *   entry    := term {"*" term}
 *   term     := base ["^" "(" exponent ")" | "^" integer]
 *   base     := "p" | "zeta" | rational | "(" rational "+" "p" ")" | "(1+p)"
 *            |  <declared unit symbol>
 *   exponent := sum of products of: rational | "sqrt" "(" rational ")"
 *
 * "(1+p)" denotes the canonical principal-unit generator u0; any other
 * "(r+p)" is sugar for the rational r+p.  Declared manifest symbols (for
 * instance "eps") may be used as bases so printed elements re-parse.
 */
class EntryParser {
public:
    EntryParser(std::string text, ManifestPtr man)
        : s_(std::move(text)), man_(std::move(man)) {}

    MultElement parse() {
        MultElement x = parse_term();
        skip_ws();
        while (peek() == '*') {
            get();
            x = x * parse_term();
            skip_ws();
        }
        if (pos_ != s_.size()) fail(errc::parse_error, "trailing input at offset " + std::to_string(pos_));
        return x;
    }

private:
    MultElement parse_term() {
        MultElement base = parse_base();
        skip_ws();
        if (peek() != '^') return base;
        get();
        skip_ws();
        Quad e;
        if (peek() == '(') {
            get();
            e = parse_exponent();
            expect(')');
        } else {
            e = Quad(parse_rational_integer());
        }
        return base.pow(e);
    }

    MultElement parse_base() {
        skip_ws();
        char c = peek();
        if (c == 'p' && !std::isalnum(static_cast<unsigned char>(peek_at(1)))) {
            get();
            return MultElement::p_power(man_, Rational(1));
        }
        if (match_word("zeta")) return MultElement::zeta_power(man_, 1);
        if (c == '(') {
            size_t save = pos_;
            get();
            skip_ws();
            Rational r = parse_rational();
            skip_ws();
            if (peek() == '+' && consume_plus_p()) {
                if (r == 1) return MultElement::unit_symbol(man_, "u0");
                return MultElement::from_rational(man_, r + Rational(man_->prime()));
            }
            pos_ = save;
            fail(errc::parse_error, "expected \"(rational + p)\" at offset " + std::to_string(save));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = parse_name();
            if (man_->has_unit(name)) return MultElement::unit_symbol(man_, name);
            fail(errc::parse_error, "unknown base symbol \"" + name + "\"");
        }
        Rational r = parse_rational();
        if (r == 0) fail(errc::parse_error, "0 is not an element of Q_p^x");
        return MultElement::from_rational(man_, r);
    }

    Quad parse_exponent() {
        Quad v = parse_exp_product();
        skip_ws();
        while (peek() == '+' || peek() == '-') {
            char op = get();
            Quad w = parse_exp_product();
            v = (op == '+') ? v + w : v - w;
            skip_ws();
        }
        return v;
    }

    Quad parse_exp_product() {
        Quad v = parse_exp_atom();
        skip_ws();
        while (peek() == '*') {
            get();
            v = v * parse_exp_atom();
            skip_ws();
        }
        return v;
    }

    Quad parse_exp_atom() {
        skip_ws();
        if (peek() == '(') {
            get();
            Quad v = parse_exponent();
            expect(')');
            return v;
        }
        if (match_word("sqrt")) {
            skip_ws();
            expect('(');
            Rational r = parse_rational();
            expect(')');
            return Quad::sqrt_of(r);
        }
        return Quad(parse_rational());
    }

    Rational parse_rational() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { get(); neg = true; }
        Int n = parse_digits();
        Int d = 1;
        skip_ws();
        if (peek() == '/') {
            get();
            skip_ws();
            d = parse_digits();
        }
        Rational r = make_rat(n, d);
        return neg ? -r : r;
    }

    Rational parse_rational_integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { get(); neg = true; }
        Int n = parse_digits();
        return Rational(neg ? -n : n);
    }

    Int parse_digits() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail(errc::parse_error, "expected a number at offset " + std::to_string(pos_));
        Int n = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            n = n * 10 + (get() - '0');
        return n;
    }

    std::string parse_name() {
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            out += get();
        return out;
    }

    bool consume_plus_p() {
        size_t save = pos_;
        expect('+');
        skip_ws();
        if (peek() == 'p') {
            get();
            skip_ws();
            if (peek() == ')') { get(); return true; }
        }
        pos_ = save;
        return false;
    }

    bool match_word(const std::string &w) {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) != 0) return false;
        char after = peek_at(w.size());
        if (std::isalnum(static_cast<unsigned char>(after))) return false;
        pos_ += w.size();
        return true;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            fail(errc::parse_error, std::string("expected '") + c + "' at offset " + std::to_string(pos_));
        get();
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char peek_at(size_t k) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

    std::string s_;
    size_t pos_ = 0;
    ManifestPtr man_;
};

inline MultElement parse_entry(const std::string &text, ManifestPtr man) {
    return EntryParser(text, std::move(man)).parse();
}

} // namespace abeloid
