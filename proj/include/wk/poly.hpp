#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wk/monomial.hpp"
#include "wk/rational.hpp"

namespace wk {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Sparse multivariate polynomial over the rationals in x_0 .. x_n.
/// Terms are kept in decreasing canonical monomial order (graded, then
/// lexicographic with x_0 > x_1 > ... > x_n), with no zero coefficients.
/// Values are immutable in spirit: every operation returns a fresh Poly.
class Poly {
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Poly() : n_(0) {}
    explicit Poly(int ambient) : n_(check_ambient(ambient)) {}

    static Poly zero(int n) { return Poly(n); }

    static Poly constant(int n, const Rational& c) {
        Poly p(n);
        if (c != 0) p.terms_.push_back({Monomial(), c});
        return p;
    }

    static Poly variable(int n, int i) {
        Poly p(n);
        if (i < 0 || i > n) throw std::invalid_argument("variable index out of range");
        p.terms_.push_back({Monomial::variable(i), Rational(1)});
        return p;
    }

    static Poly single_term(int n, const Monomial& m, const Rational& c) {
        Poly p(n);
        if (m.max_var_index() > n) throw std::invalid_argument("monomial exceeds ambient size");
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds from (monomial, coefficient) pairs in any order, merging
    /// duplicates and dropping zeros.
    static Poly from_terms(int n, std::vector<Term> terms) {
        Poly p(n);
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.mono > b.mono; });
        for (Term& t : terms) {
            if (t.mono.max_var_index() > n) throw std::invalid_argument("monomial exceeds ambient size");
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff == 0) p.terms_.pop_back();
            } else if (t.coeff != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    int ambient() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Leading term in the canonical order; requires a nonzero polynomial.
    const Term& leading_term() const {
        if (terms_.empty()) throw std::invalid_argument("zero polynomial has no leading term");
        return terms_.front();
    }

    const std::vector<Term>& terms() const { return terms_; }

    Poly operator-() const {
        Poly r(n_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_same_ambient(b);
        Poly r(a.n_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const Term& ta = a.terms_[i];
            const Term& tb = b.terms_[j];
            if (ta.mono > tb.mono) {
                r.terms_.push_back(ta);
                ++i;
            } else if (tb.mono > ta.mono) {
                r.terms_.push_back(tb);
                ++j;
            } else {
                Rational c = ta.coeff + tb.coeff;
                if (c != 0) r.terms_.push_back({ta.mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_ambient(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.n_);
        const Poly& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const Poly& large = a.terms_.size() <= b.terms_.size() ? b : a;
        std::map<Monomial, Rational, std::greater<Monomial>> acc;
        for (const Term& ts : small.terms_) {
            for (const Term& tl : large.terms_) {
                Monomial m = ts.mono.times(tl.mono);
                auto [it, inserted] = acc.try_emplace(std::move(m), Rational());
                if (inserted)
                    it->second = ts.coeff * tl.coeff;
                else
                    it->second += ts.coeff * tl.coeff;
            }
        }
        Poly r(a.n_);
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        return r;
    }

    friend Poly operator*(const Rational& c, const Poly& p) {
        Poly r(p.n_);
        if (c == 0) return r;
        r.terms_.reserve(p.terms_.size());
        for (const Term& t : p.terms_) r.terms_.push_back({t.mono, c * t.coeff});
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    static int check_ambient(int n) {
        if (n < 0 || n >= max_vars)
            throw std::invalid_argument("ambient size must be in [0, " + std::to_string(max_vars - 1) + "]");
        return n;
    }

    void require_same_ambient(const Poly& o) const {
        if (n_ != o.n_) throw std::invalid_argument("ambient mismatch");
    }

    int n_;
    std::vector<Term> terms_;
};

inline Poly add(const Poly& p, const Poly& q) { return p + q; }
inline Poly mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly scale(const Rational& c, const Poly& p) { return c * p; }

/// Exact partial derivative with respect to x_i.
inline Poly partial(const Poly& p, int i) {
    if (i < 0 || i > p.ambient()) throw std::invalid_argument("variable index out of range");
    std::vector<Poly::Term> out;
    out.reserve(p.terms().size());
    for (const Poly::Term& t : p.terms()) {
        int e = t.mono.exponent(i);
        if (e == 0) continue;
        out.push_back({t.mono.divided_by_var(i), Rational(e) * t.coeff});
    }
    return Poly::from_terms(p.ambient(), std::move(out));
}

inline long weight_of_monomial(const Monomial& m, int n) { return m.weight(n); }

inline bool is_homogeneous(const Poly& p) {
    if (p.is_zero()) return true;
    int d = p.terms().front().mono.total_degree();
    for (const Poly::Term& t : p.terms())
        if (t.mono.total_degree() != d) return false;
    return true;
}

/// Homogeneous with a single e-eigenvalue across all monomials.
inline bool is_isobaric(const Poly& p) {
    if (p.is_zero()) return true;
    if (!is_homogeneous(p)) return false;
    long w = p.terms().front().mono.weight(p.ambient());
    for (const Poly::Term& t : p.terms())
        if (t.mono.weight(p.ambient()) != w) return false;
    return true;
}

inline long weight(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has no weight");
    if (!is_isobaric(p)) throw std::invalid_argument("weight of non-isobaric polynomial");
    return p.terms().front().mono.weight(p.ambient());
}

inline int degree(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has no degree");
    int d = 0;
    for (const Poly::Term& t : p.terms()) d = std::max(d, t.mono.total_degree());
    return d;
}

/// The unique scalar multiple with coprime integer coefficients and a
/// positive leading coefficient. Idempotent.
inline Poly normalize_primitive(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
    Integer den_lcm = 1;
    for (const Poly::Term& t : p.terms()) {
        Integer d = t.coeff.get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Integer num_gcd = 0;
    for (const Poly::Term& t : p.terms()) {
        Integer scaled_num = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (p.leading_term().coeff < 0) factor = -factor;
    return factor * p;
}

// ---------------------------------------------------------------------------
// Text format. Grammar: terms joined by '+'/'-'; a term is an optional
// integer-or-fraction coefficient and '*'-separated powers x<idx>[^<exp>];
// whitespace insignificant. Example: -3*x0*x1*x2 + 3*x0^2*x3 + x1^3
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, int n) : s_(text), n_(n) {}

    Poly parse() {
        std::vector<Poly::Term> terms;
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        bool negative = consume_sign(true);
        parse_term(terms, negative);
        skip_ws();
        while (!at_end()) {
            bool neg = consume_sign(false);
            parse_term(terms, neg);
            skip_ws();
        }
        return Poly::from_terms(n_, std::move(terms));
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) ++pos_;
    }

    bool consume_sign(bool optional) {
        skip_ws();
        if (!at_end() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            return neg;
        }
        if (!optional) throw ParseError("expected '+' or '-'", pos_);
        return false;
    }

    Integer parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (!at_end() && peek() >= '0' && peek() <= '9') ++pos_;
        if (pos_ == start) throw ParseError("expected integer", pos_);
        return Integer(s_.substr(start, pos_ - start));
    }

    void parse_term(std::vector<Poly::Term>& terms, bool negative) {
        skip_ws();
        if (at_end()) throw ParseError("expected term", pos_);
        Rational coeff(1);
        bool saw_coeff = false;
        if (peek() >= '0' && peek() <= '9') {
            Integer num = parse_integer();
            Integer den = 1;
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++pos_;
                std::size_t den_pos = pos_;
                den = parse_integer();
                if (den == 0) throw ParseError("zero denominator", den_pos);
            }
            coeff = Rational(num, den);
            coeff.canonicalize();
            saw_coeff = true;
        }
        Monomial mono;
        bool saw_var = false;
        skip_ws();
        if (saw_coeff && !at_end() && peek() == '*') {
            ++pos_;
            parse_powers(mono);
            saw_var = true;
        } else if (!saw_coeff) {
            parse_powers(mono);
            saw_var = true;
        }
        if (!saw_coeff && !saw_var) throw ParseError("expected coefficient or variable", pos_);
        if (negative) coeff = -coeff;
        terms.push_back({mono, coeff});
    }

    void parse_powers(Monomial& mono) {
        parse_power(mono);
        skip_ws();
        while (!at_end() && peek() == '*') {
            ++pos_;
            parse_power(mono);
            skip_ws();
        }
    }

    void parse_power(Monomial& mono) {
        skip_ws();
        if (at_end() || peek() != 'x') throw ParseError("expected variable", pos_);
        ++pos_;
        std::size_t idx_pos = pos_;
        Integer idx = parse_integer();
        if (idx < 0 || idx > n_)
            throw ParseError("variable index out of range (n = " + std::to_string(n_) + ")", idx_pos);
        int exp = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            std::size_t exp_pos = pos_;
            Integer e = parse_integer();
            if (e > 255) throw ParseError("exponent too large", exp_pos);
            exp = static_cast<int>(e.get_si());
        }
        int i = static_cast<int>(idx.get_si());
        mono.set_exponent(i, mono.exponent(i) + exp);
    }

    const std::string& s_;
    int n_;
    std::size_t pos_ = 0;
};

inline void format_monomial(std::ostream& os, const Monomial& m) {
    bool first = true;
    for (int i = 0; i < max_vars; ++i) {
        int e = m.exponent(i);
        if (e == 0) continue;
        if (!first) os << '*';
        os << 'x' << i;
        if (e > 1) os << '^' << e;
        first = false;
    }
}

}  // namespace detail

inline Poly parse_poly(const std::string& text, int n) {
    return detail::PolyParser(text, n).parse();
}

/// Canonical string: terms in decreasing canonical monomial order,
/// deterministic. parse_poly(format_poly(p), n) == p.
inline std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Poly::Term& t : p.terms()) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) {
                os << '-';
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (t.mono.is_constant()) {
            os << format_rational(c);
        } else {
            if (c != 1) os << format_rational(c) << '*';
            detail::format_monomial(os, t.mono);
        }
        first = false;
    }
    return os.str();
}

}  // namespace wk
