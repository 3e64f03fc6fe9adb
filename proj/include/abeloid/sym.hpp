#pragma once

#include <map>
#include <string>
#include <vector>

#include "quad.hpp"

namespace abeloid {

/**
 * Exact symbolic constant: a finite Q(sqrt(d))-linear combination of
 * monomials in named transcendental symbols (in practice, Iwasawa
 * logarithms of declared principal units).  A monomial is a sorted list of
 * symbol names; the empty monomial is the constant term.
 *
 * Distinct monomials are treated as Q-linearly independent; that is the
 * recorded input assumption behind every "exact" rational-dimension count,
 * and it is what reduces dim_Q questions to plain rational kernels of the
 * per-monomial (and per-surd-component) coefficient rows.
 */
class Sym {
public:
    using Monomial = std::vector<std::string>; // sorted

    Sym() = default;
    Sym(const Quad &c) {
        if (!c.is_zero()) terms_[{}] = c;
    }
    Sym(const Rational &c) : Sym(Quad(c)) {}

    static Sym symbol(const std::string &name, const Quad &coeff = Quad(Rational(1))) {
        Sym s;
        if (!coeff.is_zero()) s.terms_[{name}] = coeff;
        return s;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    Quad constant_part() const {
        auto it = terms_.find({});
        return it == terms_.end() ? Quad() : it->second;
    }

    const std::map<Monomial, Quad> &terms() const { return terms_; }

    friend Sym operator+(const Sym &x, const Sym &y) {
        Sym r = x;
        for (auto &[m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    Sym operator-() const {
        Sym r;
        for (auto &[m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend Sym operator-(const Sym &x, const Sym &y) { return x + (-y); }

    friend Sym operator*(const Sym &x, const Sym &y) {
        Sym r;
        for (auto &[mx, cx] : x.terms_)
            for (auto &[my, cy] : y.terms_) {
                Monomial m = mx;
                m.insert(m.end(), my.begin(), my.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, cx * cy);
            }
        return r;
    }

    friend Sym operator*(const Quad &c, const Sym &x) { return Sym(c) * x; }

    friend bool operator==(const Sym &x, const Sym &y) { return (x - y).is_zero(); }
    friend bool operator!=(const Sym &x, const Sym &y) { return !(x == y); }

    // Substitute a symbol by another symbolic constant.
    Sym substituted(const std::string &name, const Sym &value) const {
        Sym r;
        for (auto &[m, c] : terms_) {
            Sym t(c);
            for (auto &s : m) {
                if (s == name) t = t * value;
                else t = t * symbol(s);
            }
            r = r + t;
        }
        return r;
    }

    // Numeric image given values for every symbol that occurs.
    PadicNumber eval(const std::map<std::string, PadicNumber> &env, const Int &p, int N) const {
        PadicNumber acc = PadicNumber::zero(p, N);
        for (auto &[m, c] : terms_) {
            PadicNumber t = c.eval(p, N);
            for (auto &s : m) {
                auto it = env.find(s);
                if (it == env.end()) fail(errc::insufficient_facts, "no value for symbol " + s);
                t = t * it->second;
            }
            acc = acc + t;
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto &[m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (auto &s : m) out += "*" + s;
        }
        return out;
    }

private:
    void add_term(const Monomial &m, const Quad &c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[m] = c;
            return;
        }
        Quad s = it->second + c;
        if (s.is_zero()) terms_.erase(it);
        else it->second = s;
    }

    std::map<Monomial, Quad> terms_;
};

} // namespace abeloid
