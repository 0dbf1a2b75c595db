#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wk/derivation.hpp"
#include "wk/linalg.hpp"
#include "wk/poly.hpp"

namespace wk {

/// A D-module realized inside k[X]: an ordered polynomial basis together
/// with the action matrix M, row i giving D(basis_i) = sum_j M[i][j] basis_j.
struct RealizedModule {
    std::vector<Poly> basis;
    QMatrix action;
};

/// The variable module X_m = <x_0, ..., x_m> under D. Requires D to map the
/// span into itself.
inline RealizedModule variable_module(const LinearDerivation& d, int m) {
    if (m < 0 || m > d.n) throw std::invalid_argument("module level out of range");
    for (int i = 0; i <= m; ++i)
        for (int j = m + 1; j <= d.n; ++j)
            if (d.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0)
                throw std::invalid_argument("derivation does not stabilize the variable span");
    RealizedModule mod;
    QMatrix act(static_cast<std::size_t>(m) + 1, static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        mod.basis.push_back(Poly::variable(d.n, i));
        for (int j = 0; j <= m; ++j)
            act.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                d.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    mod.action = std::move(act);
    return mod;
}

/// True iff the stated bases are dual: M_W = -(M_V)^T.
inline bool check_dual(const RealizedModule& v, const RealizedModule& w) {
    if (v.basis.size() != w.basis.size() || v.action.rows() != w.action.rows())
        throw std::invalid_argument("dual check requires equal dimensions");
    return w.action == v.action.negated_transpose();
}

/// Casimir element of a dual pair: sum_i v_i * w_i. Lands in the kernel of
/// the defining derivation.
inline Poly casimir_element(const RealizedModule& v, const RealizedModule& w) {
    if (!check_dual(v, w)) throw std::invalid_argument("modules are not dual");
    if (v.basis.empty()) throw std::invalid_argument("empty module");
    Poly sum = Poly::zero(v.basis.front().ambient());
    for (std::size_t i = 0; i < v.basis.size(); ++i) sum = sum + v.basis[i] * w.basis[i];
    return sum;
}

/// The quadratic Casimir of the pair (X_m, X_m*) for the lowering operator:
/// sum_{i=0}^{m} (-1)^i x_i x_{m-i}. Vanishes for odd m.
inline Poly standard_casimir(int m, int n) {
    if (m < 0 || m > n) throw std::invalid_argument("level must satisfy 0 <= m <= n");
    Poly sum = Poly::zero(n);
    for (int i = 0; i <= m; ++i) {
        Rational sign(i % 2 == 0 ? 1 : -1);
        sum = sum + scale(sign, Poly::variable(n, i) * Poly::variable(n, m - i));
    }
    return sum;
}

namespace detail {

/// String vectors v_0..v_kmax of an isobaric kernel element:
/// v_i = alpha_i(z) * raise^i(z) with alpha_i = (w-i)!/(i! w!), so that
/// d(v_i) = v_{i-1}. Entries beyond ord(z) = w(z) are zero.
inline std::vector<Poly> string_vectors(const Poly& z, int kmax, int n) {
    std::vector<Poly> v;
    v.reserve(static_cast<std::size_t>(kmax) + 1);
    v.push_back(z);
    long w = weight(z);
    LinearDerivation up = raising(n);
    for (int i = 1; i <= kmax; ++i) {
        if (i > w) {
            v.push_back(Poly::zero(n));
            continue;
        }
        Poly next = apply(up, v.back());
        Rational alpha_step(1, i * (w - i + 1));
        alpha_step.canonicalize();
        v.push_back(scale(alpha_step, next));
    }
    if (kmax >= w && w >= 0) {
        // ord = weight for kernel elements; a nonzero continuation means the
        // input violated the kernel precondition.
        Poly beyond = apply(up, v[static_cast<std::size_t>(w)]);
        if (!beyond.is_zero())
            throw std::invalid_argument("string module source is not annihilated by d");
    }
    return v;
}

/// tau_i against precomputed string vectors:
/// sum_{k=0}^{i} (-1)^k x_{i-k} v_k.
inline Poly tau_from_vectors(int i, const std::vector<Poly>& v, int n) {
    Poly sum = Poly::zero(n);
    for (int k = 0; k <= i && k < static_cast<int>(v.size()); ++k) {
        if (v[static_cast<std::size_t>(k)].is_zero()) continue;
        Rational sign(k % 2 == 0 ? 1 : -1);
        sum = sum + scale(sign, Poly::variable(n, i - k) * v[static_cast<std::size_t>(k)]);
    }
    return sum;
}

}  // namespace detail

/// The d-module V_m(z) = <v_0, ..., v_m> attached to an isobaric kernel
/// element, with v_0 = z and d(v_i) = v_{i-1}.
struct StringModule {
    Poly source;
    long omega;
    std::vector<Poly> vectors;
};

inline StringModule string_module(const Poly& z, int m, int n) {
    if (z.is_zero()) throw std::invalid_argument("string module of the zero polynomial");
    if (z.ambient() != n) throw std::invalid_argument("ambient mismatch");
    if (!is_isobaric(z)) throw std::invalid_argument("string module source must be isobaric");
    if (!apply(weitzenboeck(n), z).is_zero())
        throw std::invalid_argument("string module source is not annihilated by d");
    long w = weight(z);
    if (m < 0 || m > std::min<long>(w, n))
        throw std::invalid_argument("string module length exceeds min(ord(z), n)");
    return StringModule{z, w, detail::string_vectors(z, m, n)};
}

/// tau_i(z) = Delta(X_i, V_i*(z)) with the fixed sign convention
/// tau_i(z) = sum_{k=0}^{i} (-1)^k x_{i-k} v_k(z). Defined for isobaric
/// kernel elements with i <= min(ord(z), n) and extended linearly over
/// isobaric components. The image lies in the kernel of d.
inline Poly tau(int i, const Poly& z, int n) {
    if (i < 0 || i > n) throw std::invalid_argument("tau index out of range");
    if (z.ambient() != n) throw std::invalid_argument("ambient mismatch");
    if (z.is_zero()) return Poly::zero(n);
    if (!apply(weitzenboeck(n), z).is_zero())
        throw std::invalid_argument("tau argument is not annihilated by d");
    Poly sum = Poly::zero(n);
    for (const IsobaricComponent& comp : isobaric_components(z)) {
        if (i > comp.weight)
            throw std::invalid_argument(
                "tau index exceeds the order of an isobaric component (i = " + std::to_string(i) +
                ", ord = " + std::to_string(comp.weight) + ")");
        sum = sum + detail::tau_from_vectors(i, detail::string_vectors(comp.part, i, n), n);
    }
    return sum;
}

/// The coefficients c(0..n) expressing deg(z) * z = sum_i tau_{n-i}(c(i)).
struct TauDecomposition {
    Poly source;
    std::vector<Poly> c;
};

/// Coefficients of the recursion
///   c(0) = d_n(z),   c(i) = d_{n-i}(z) + sum_{k=1}^{i} (-1)^{k+1} c_k(i-k),
/// where c_k(j) is the k-th string vector of c(j). Every c(i) is in the
/// kernel and the reconstruction identity is verified exactly; a failure
/// aborts, as it can only mean a sign-convention regression.
inline TauDecomposition tau_decompose(const Poly& z, int n) {
    if (z.is_zero()) throw std::invalid_argument("cannot decompose the zero polynomial");
    if (z.ambient() != n) throw std::invalid_argument("ambient mismatch");
    if (!is_homogeneous(z) || !is_isobaric(z))
        throw std::invalid_argument("decomposition requires a homogeneous isobaric polynomial");
    LinearDerivation down = weitzenboeck(n);
    if (!apply(down, z).is_zero())
        throw std::invalid_argument("decomposition argument is not annihilated by d");

    std::vector<Poly> c;
    std::vector<std::vector<Poly>> strings;  // strings[j][k] = c_k(j)
    c.reserve(static_cast<std::size_t>(n) + 1);
    strings.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        Poly ci = partial(z, n - i);
        for (int k = 1; k <= i; ++k) {
            const std::vector<Poly>& sv = strings[static_cast<std::size_t>(i - k)];
            if (k >= static_cast<int>(sv.size()) || sv[static_cast<std::size_t>(k)].is_zero()) continue;
            Rational sign(k % 2 == 1 ? 1 : -1);
            ci = ci + scale(sign, sv[static_cast<std::size_t>(k)]);
        }
        if (!apply(down, ci).is_zero())
            throw std::logic_error("tau decomposition produced a coefficient outside the kernel");
        if (ci.is_zero())
            strings.push_back({});
        else
            strings.push_back(detail::string_vectors(ci, n - i, n));
        c.push_back(std::move(ci));
    }

    Poly recon = Poly::zero(n);
    for (int i = 0; i <= n; ++i) {
        if (c[static_cast<std::size_t>(i)].is_zero()) continue;
        recon = recon + detail::tau_from_vectors(n - i, strings[static_cast<std::size_t>(i)], n);
    }
    if (recon != scale(Rational(degree(z)), z))
        throw std::logic_error("tau decomposition failed to reconstruct deg(z) * z");
    return TauDecomposition{z, std::move(c)};
}

/// The gradient module Z_D = <d_0(z), ..., d_n(z)> of a kernel element,
/// with action -lambda^T; dual to (X_n, lambda) by construction.
inline RealizedModule gradient_module(const Poly& z, const LinearDerivation& d) {
    if (z.is_zero()) throw std::invalid_argument("gradient module of the zero polynomial");
    if (z.ambient() != d.n) throw std::invalid_argument("ambient mismatch");
    if (!apply(d, z).is_zero())
        throw std::invalid_argument("gradient module source is not annihilated by the derivation");
    RealizedModule mod;
    for (int i = 0; i <= d.n; ++i) mod.basis.push_back(partial(z, i));
    mod.action = d.lambda.negated_transpose();
    return mod;
}

/// Euler pairing Delta(X_n, Z_D) = sum_i x_i d_i(z); equals deg(z) * z,
/// exhibiting every homogeneous kernel element as a Casimir element.
inline Poly euler_casimir(const Poly& z, const LinearDerivation& d) {
    if (z.is_zero()) throw std::invalid_argument("euler pairing of the zero polynomial");
    if (z.ambient() != d.n) throw std::invalid_argument("ambient mismatch");
    if (!is_homogeneous(z)) throw std::invalid_argument("euler pairing requires homogeneous input");
    if (!apply(d, z).is_zero())
        throw std::invalid_argument("euler pairing source is not annihilated by the derivation");
    Poly sum = Poly::zero(d.n);
    for (int i = 0; i <= d.n; ++i) sum = sum + Poly::variable(d.n, i) * partial(z, i);
    if (sum != scale(Rational(degree(z)), z))
        throw std::logic_error("Euler identity failed on homogeneous input");
    return sum;
}

}  // namespace wk
