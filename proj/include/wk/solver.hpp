#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wk/oracle.hpp"
#include "wk/subalgebra.hpp"

namespace wk {

struct SolverConfig {
    int n = 1;
    int max_rounds = 10;
    std::optional<int> degree_cap;
    bool minimize = true;
    SplitRule rule = SplitRule::NonStrict;
    std::ostream* progress = nullptr;  // round/candidate logging, e.g. &std::cerr
};

struct KernelResult {
    int n = 0;
    std::vector<GeneratorInfo> generators;  // discovery order
    int rounds_used = 0;
    bool closed = false;
};

/// Greedy redundancy elimination: repeatedly removes a generator lying in
/// the subalgebra of the remaining ones, highest degree first (a graded
/// algebra cannot generate a low degree from strictly higher ones), ties by
/// canonical string. The output is inclusion-minimal under is_member.
inline KernelResult minimize(const KernelResult& result) {
    if (!result.closed) throw std::invalid_argument("minimize requires a closed result");
    KernelResult out = result;
    bool removed = true;
    while (removed) {
        removed = false;
        std::vector<std::size_t> order(out.generators.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            int da = out.generators[a].sig.deg, db = out.generators[b].sig.deg;
            if (da != db) return da > db;
            return format_poly(out.generators[a].poly) < format_poly(out.generators[b].poly);
        });
        for (std::size_t idx : order) {
            std::vector<GeneratorInfo> rest;
            for (std::size_t j = 0; j < out.generators.size(); ++j)
                if (j != idx) rest.push_back(out.generators[j]);
            if (rest.empty()) continue;
            if (is_member(out.generators[idx].poly, rest, out.n).has_value()) {
                out.generators = std::move(rest);
                removed = true;
                break;
            }
        }
    }
    return out;
}

/// The closure iteration B_0 = k[x_0], B_m = closure(B_{m-1}): each round
/// evaluates tau on the admissible candidate products and adjoins the
/// acceptable results until a round produces nothing new.
inline KernelResult compute_kernel(const SolverConfig& config) {
    if (config.n < 1) throw std::invalid_argument("ambient size must be at least 1");
    if (config.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
    const int n = config.n;

    SubalgebraBasis basis;
    {
        GeneratorInfo t;
        t.name = "t";
        t.poly = Poly::variable(n, 0);
        t.sig = Signature{1, n, 0};
        t.provenance = "x0";
        t.round = 0;
        basis.fresh.push_back(std::move(t));
    }

    KernelResult result;
    result.n = n;
    bool capped_any = false;
    int next_id = 1;
    for (int round = 1; round <= config.max_rounds; ++round) {
        result.rounds_used = round;
        auto start = std::chrono::steady_clock::now();
        AcceptableOptions opts;
        opts.rule = config.rule;
        opts.degree_cap = config.degree_cap;
        opts.progress = config.progress;
        AcceptableSet found = acceptable_set(basis, n, opts);
        capped_any = capped_any || found.degree_capped;
        if (config.progress) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            *config.progress << "round " << round << ": " << found.candidates_considered
                             << " candidates, " << found.accepted.size() << " accepted ("
                             << ms << " ms)\n";
        }
        if (found.accepted.empty()) {
            result.closed = !capped_any;
            break;
        }
        for (GeneratorInfo& g : found.accepted) {
            g.name = "g" + std::to_string(next_id++);
            g.round = round;
        }
        basis.established.insert(basis.established.end(), basis.fresh.begin(), basis.fresh.end());
        basis.fresh = std::move(found.accepted);
    }

    result.generators = basis.all();
    if (config.minimize && result.closed) {
        std::size_t before = result.generators.size();
        result = minimize(result);
        if (config.progress && result.generators.size() != before)
            *config.progress << "minimize: removed " << (before - result.generators.size())
                             << " redundant generator(s)\n";
    }
    return result;
}

struct VerifyEntry {
    std::string name;
    bool annihilated = false;
    bool signature_consistent = false;
    bool order_equals_weight = false;
    std::size_t term_count = 0;
    bool ok = false;
};

struct VerifyReport {
    int n = 0;
    std::vector<VerifyEntry> entries;
    bool pass = false;
    std::optional<CrossCheckReport> oracle;
};

/// Re-checks every generator from first principles: annihilation by d,
/// signature consistency with the independently iterated order, and the
/// order/weight equality. Optionally appends an oracle slice comparison.
inline VerifyReport verify_result(const KernelResult& result, int oracle_deg_max = -1) {
    VerifyReport report;
    report.n = result.n;
    LinearDerivation d = weitzenboeck(result.n);
    bool all_ok = true;
    for (const GeneratorInfo& g : result.generators) {
        VerifyEntry e;
        e.name = g.name;
        e.term_count = g.poly.term_count();
        e.annihilated = !g.poly.is_zero() && apply(d, g.poly).is_zero();
        if (e.annihilated) {
            Signature independent = signature(g.poly, result.n);
            e.signature_consistent = independent == g.sig &&
                                     2 * g.sig.coweight == result.n * g.sig.deg - g.sig.ord;
            e.order_equals_weight = independent.ord == weight(g.poly);
        }
        e.ok = e.annihilated && e.signature_consistent && e.order_equals_weight;
        all_ok = all_ok && e.ok;
        report.entries.push_back(std::move(e));
    }
    report.pass = all_ok;
    if (oracle_deg_max >= 0) {
        report.oracle = cross_check(result.generators, result.n, oracle_deg_max);
        report.pass = report.pass && report.oracle->discrepancies == 0;
    }
    return report;
}

}  // namespace wk
