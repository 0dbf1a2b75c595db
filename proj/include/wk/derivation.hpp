#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wk/linalg.hpp"
#include "wk/poly.hpp"

namespace wk {

/// A linear derivation of k[x_0..x_n], stored by its matrix: row i gives
/// D(x_i) = sum_j lambda[i][j] * x_j.
struct LinearDerivation {
    int n;
    QMatrix lambda;

    LinearDerivation(int ambient, QMatrix m) : n(ambient), lambda(std::move(m)) {
        if (lambda.rows() != static_cast<std::size_t>(n) + 1 || lambda.cols() != lambda.rows())
            throw std::invalid_argument("derivation matrix must be (n+1) x (n+1)");
    }

    static LinearDerivation from_entries(int ambient,
                                         const std::vector<std::vector<Rational>>& rows) {
        QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix must be square");
            for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
        }
        return LinearDerivation(ambient, std::move(m));
    }
};

/// The lowering operator d: d(x_i) = x_{i-1}, d(x_0) = 0.
inline LinearDerivation weitzenboeck(int n) {
    QMatrix m(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i) - 1) = 1;
    return LinearDerivation(n, std::move(m));
}

/// The raising operator: d^(x_i) = (i+1)(n-i) x_{i+1}, d^(x_n) = 0.
inline LinearDerivation raising(int n) {
    QMatrix m(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i)
        m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1) = Rational((i + 1) * (n - i));
    return LinearDerivation(n, std::move(m));
}

/// The toral operator: e(x_i) = (n-2i) x_i.
inline LinearDerivation toral(int n) {
    QMatrix m(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Rational(n - 2 * i);
    return LinearDerivation(n, std::move(m));
}

/// Leibniz extension to polynomials: apply(D, p) = sum_i D(x_i) d/dx_i p.
inline Poly apply(const LinearDerivation& d, const Poly& p) {
    if (d.n != p.ambient()) throw std::invalid_argument("ambient mismatch");
    // Sparse row lists of the matrix, built once per call.
    std::vector<std::vector<std::pair<int, const Rational*>>> rows(static_cast<std::size_t>(d.n) + 1);
    for (int i = 0; i <= d.n; ++i)
        for (int j = 0; j <= d.n; ++j) {
            const Rational& v = d.lambda.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (v != 0) rows[static_cast<std::size_t>(i)].push_back({j, &v});
        }
    std::vector<Poly::Term> buffer;
    for (const Poly::Term& t : p.terms()) {
        for (int i = 0; i <= d.n; ++i) {
            int e = t.mono.exponent(i);
            if (e == 0 || rows[static_cast<std::size_t>(i)].empty()) continue;
            Monomial base = t.mono.divided_by_var(i);
            Rational fc = Rational(e) * t.coeff;
            for (const auto& [j, lam] : rows[static_cast<std::size_t>(i)])
                buffer.push_back({base.times_var(j), fc * (*lam)});
        }
    }
    return Poly::from_terms(p.ambient(), std::move(buffer));
}

/// The derivation acting as A∘B - B∘A on the variable span.
inline LinearDerivation commutator(const LinearDerivation& a, const LinearDerivation& b) {
    if (a.n != b.n) throw std::invalid_argument("ambient mismatch");
    // Row convention: (A after B)(x_i) has matrix lambda_B * lambda_A.
    return LinearDerivation(a.n, b.lambda * a.lambda - a.lambda * b.lambda);
}

/// ord(p): the largest s with raising^s(p) != 0. Guarded at n*deg(p)+1
/// iterations, which the weight bound makes unreachable.
inline int order(const Poly& p, int n) {
    if (p.ambient() != n) throw std::invalid_argument("ambient mismatch");
    if (p.is_zero()) throw std::invalid_argument("order of the zero polynomial");
    LinearDerivation up = raising(n);
    int guard = n * degree(p) + 1;
    Poly q = p;
    for (int s = 0; s <= guard; ++s) {
        Poly next = apply(up, q);
        if (next.is_zero()) return s;
        q = std::move(next);
    }
    throw std::logic_error("order iteration exceeded the weight bound");
}

struct IsobaricComponent {
    int degree;
    long weight;
    Poly part;
};

/// Splits p into homogeneous isobaric parts, returned in increasing
/// (degree, weight) order. Summing the parts restores p.
inline std::vector<IsobaricComponent> isobaric_components(const Poly& p) {
    std::map<std::pair<int, long>, std::vector<Poly::Term>> buckets;
    for (const Poly::Term& t : p.terms())
        buckets[{t.mono.total_degree(), t.mono.weight(p.ambient())}].push_back(t);
    std::vector<IsobaricComponent> out;
    out.reserve(buckets.size());
    for (auto& [key, terms] : buckets)
        out.push_back({key.first, key.second, Poly::from_terms(p.ambient(), std::move(terms))});
    return out;
}

/// Matrix text format: one row per line, rational entries separated by
/// whitespace. The row count fixes the ambient size.
inline LinearDerivation parse_derivation_matrix(const std::string& text) {
    std::vector<std::vector<Rational>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::vector<Rational> row;
        std::string tok;
        while (fields >> tok) {
            Rational q;
            try {
                q = Rational(tok);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("bad matrix entry '" + tok + "'");
            }
            if (q.get_den() == 0) throw std::invalid_argument("bad matrix entry '" + tok + "'");
            q.canonicalize();
            row.push_back(q);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    return LinearDerivation::from_entries(static_cast<int>(rows.size()) - 1, rows);
}

}  // namespace wk
