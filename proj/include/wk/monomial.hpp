#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wk {

/// Largest supported number of variables (x_0 .. x_{max_vars-1}).
inline constexpr int max_vars = 15;

/// A power product x_0^{e_0} * ... * x_n^{e_n}. The ambient size n is not
/// stored here; a monomial is valid for ambient n when all exponents beyond
/// index n vanish. Exponents are capped at 255 per variable, which is far
/// beyond anything the kernel computations reach.
class Monomial {
public:
    Monomial() : deg_(0), e_{} {}

    static Monomial variable(int i) {
        Monomial m;
        m.set_exponent(i, 1);
        return m;
    }

    static Monomial from_exponents(const std::vector<int>& exps) {
        if (static_cast<int>(exps.size()) > max_vars)
            throw std::invalid_argument("too many variables (max " + std::to_string(max_vars) + ")");
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) m.set_exponent(static_cast<int>(i), exps[i]);
        return m;
    }

    int exponent(int i) const {
        return (i >= 0 && i < max_vars) ? e_[static_cast<std::size_t>(i)] : 0;
    }

    void set_exponent(int i, int v) {
        if (i < 0 || i >= max_vars) throw std::invalid_argument("variable index out of range");
        if (v < 0 || v > 255) throw std::invalid_argument("exponent out of range");
        deg_ = static_cast<std::uint16_t>(deg_ - e_[static_cast<std::size_t>(i)] + v);
        e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }

    int total_degree() const { return deg_; }
    bool is_constant() const { return deg_ == 0; }

    /// Largest variable index with nonzero exponent, or -1 for the constant.
    int max_var_index() const {
        for (int i = max_vars - 1; i >= 0; --i)
            if (e_[static_cast<std::size_t>(i)] != 0) return i;
        return -1;
    }

    /// e-eigenvalue: sum of (n - 2i) over the variables, with multiplicity.
    long weight(int n) const {
        long w = 0;
        for (int i = 0; i < max_vars; ++i) w += static_cast<long>(n - 2 * i) * e_[static_cast<std::size_t>(i)];
        return w;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < max_vars; ++i) {
            int s = e_[static_cast<std::size_t>(i)] + o.e_[static_cast<std::size_t>(i)];
            if (s > 255) throw std::overflow_error("monomial exponent overflow");
            r.e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(s);
        }
        r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
        return r;
    }

    /// Quotient by x_i; requires exponent(i) > 0.
    Monomial divided_by_var(int i) const {
        Monomial r = *this;
        r.set_exponent(i, r.exponent(i) - 1);
        return r;
    }

    Monomial times_var(int i) const {
        Monomial r = *this;
        r.set_exponent(i, r.exponent(i) + 1);
        return r;
    }

    /// Canonical order: graded, ties broken lexicographically with
    /// x_0 > x_1 > ... > x_n.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return a.e_ < b.e_;
    }
    friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.deg_ == b.deg_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::uint16_t deg_;
    std::array<std::uint8_t, max_vars> e_;
};

/// All monomials of the given total degree and weight at ambient n, in
/// decreasing canonical order. Empty result when the slice is empty (e.g.
/// weight parity mismatch).
inline std::vector<Monomial> enumerate_slice_monomials(int n, int deg, long weight) {
    std::vector<Monomial> out;
    if (n < 0 || deg < 0) return out;
    std::vector<int> exps(static_cast<std::size_t>(n) + 1, 0);
    // Recurse with the leading variables chosen first so the natural emit
    // order is decreasing graded-lex.
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n) {
            exps[static_cast<std::size_t>(var)] = remaining;
            Monomial m = Monomial::from_exponents(exps);
            if (m.weight(n) == weight) out.push_back(m);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exps[static_cast<std::size_t>(var)] = e;
            self(self, var + 1, remaining - e);
        }
        exps[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, deg);
    return out;
}

}  // namespace wk
