#pragma once

#include <map>
#include <vector>

#include "wk/linalg.hpp"
#include "wk/parallel.hpp"
#include "wk/subalgebra.hpp"

namespace wk {

/// The span of monomials with one fixed (degree, weight).
struct GradedSlice {
    int n;
    int deg;
    long weight;
    std::vector<Monomial> monomials;  // complete, decreasing canonical order
};

inline GradedSlice slice_basis(int n, int deg, long weight) {
    if (deg < 0) throw std::invalid_argument("slice degree must be non-negative");
    return GradedSlice{n, deg, weight, enumerate_slice_monomials(n, deg, weight)};
}

/// Exact basis of {p in the (deg, weight) slice : d(p) = 0}, computed as the
/// nullspace of the lowering map into the (deg, weight+2) slice. Entirely
/// independent of the tau machinery.
inline std::vector<Poly> kernel_slice(int n, int deg, long weight) {
    GradedSlice source = slice_basis(n, deg, weight);
    if (source.monomials.empty()) return {};
    GradedSlice target = slice_basis(n, deg, weight + 2);
    std::map<Monomial, std::size_t, std::greater<Monomial>> index;
    for (std::size_t i = 0; i < target.monomials.size(); ++i)
        index.emplace(target.monomials[i], i);

    QMatrix m(target.monomials.size(), source.monomials.size());
    for (std::size_t j = 0; j < source.monomials.size(); ++j) {
        const Monomial& mono = source.monomials[j];
        for (int i = 1; i <= n; ++i) {
            int e = mono.exponent(i);
            if (e == 0) continue;
            Monomial image = mono.divided_by_var(i).times_var(i - 1);
            m.at(index.at(image), j) += Rational(e);
        }
    }

    std::vector<Poly> basis;
    for (const std::vector<Rational>& v : nullspace(m)) {
        std::vector<Poly::Term> terms;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) terms.push_back({source.monomials[j], v[j]});
        basis.push_back(normalize_primitive(Poly::from_terms(n, std::move(terms))));
    }
    return basis;
}

/// Dimension of the span of all generator products landing in the slice.
inline std::size_t subalgebra_slice_dim(const std::vector<GeneratorInfo>& gens, int n, int deg,
                                        long weight) {
    long doubled = static_cast<long>(n) * deg - weight;
    if (doubled < 0 || doubled % 2 != 0) return 0;
    Signature target{deg, static_cast<int>(weight), static_cast<int>(doubled / 2)};
    if (target.ord < 0) return 0;

    GradedSlice slice = slice_basis(n, deg, weight);
    std::map<Monomial, std::size_t, std::greater<Monomial>> index;
    for (std::size_t i = 0; i < slice.monomials.size(); ++i) index.emplace(slice.monomials[i], i);

    std::vector<std::vector<Rational>> rows;
    detail::for_each_signature_product(target, gens, n,
                                       [&](const std::vector<int>&, const Poly& prod) {
        std::vector<Rational> row(slice.monomials.size(), Rational(0));
        for (const Poly::Term& t : prod.terms()) row[index.at(t.mono)] = t.coeff;
        rows.push_back(std::move(row));
    });
    if (rows.empty()) return 0;
    QMatrix m(rows.size(), slice.monomials.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = std::move(rows[i][j]);
    return rank(std::move(m));
}

struct CrossCheckEntry {
    int deg;
    long weight;
    std::size_t oracle_dim;
    std::size_t subalgebra_dim;
    bool ok;
};

struct CrossCheckReport {
    int n;
    int deg_max;
    std::vector<CrossCheckEntry> entries;
    std::size_t discrepancies = 0;
};

/// Compares the exact kernel dimension of every graded slice with the span
/// of generator products. Kernel elements have ord = weight >= 0, so only
/// the non-negative weights of matching parity are checked. A discrepancy
/// means the generating set misses that slice.
inline CrossCheckReport cross_check(const std::vector<GeneratorInfo>& gens, int n, int deg_max) {
    CrossCheckReport report;
    report.n = n;
    report.deg_max = deg_max;
    std::vector<std::pair<int, long>> tasks;
    for (int deg = 0; deg <= deg_max; ++deg)
        for (long w = (static_cast<long>(n) * deg) % 2; w <= static_cast<long>(n) * deg; w += 2)
            tasks.push_back({deg, w});
    report.entries.resize(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        auto [deg, w] = tasks[i];
        std::size_t oracle_dim = kernel_slice(n, deg, w).size();
        std::size_t sub_dim = subalgebra_slice_dim(gens, n, deg, w);
        report.entries[i] = CrossCheckEntry{deg, w, oracle_dim, sub_dim, oracle_dim == sub_dim};
    });
    for (const CrossCheckEntry& e : report.entries)
        if (!e.ok) ++report.discrepancies;
    return report;
}

}  // namespace wk
