#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wk/casimir.hpp"
#include "wk/derivation.hpp"
#include "wk/parallel.hpp"
#include "wk/poly.hpp"

namespace wk {

/// Additive invariant triple [deg, ord, coweight], coweight = (n*deg - w)/2.
struct Signature {
    int deg = 0;
    int ord = 0;
    int coweight = 0;

    friend Signature operator+(const Signature& a, const Signature& b) {
        return {a.deg + b.deg, a.ord + b.ord, a.coweight + b.coweight};
    }
    friend Signature operator-(const Signature& a, const Signature& b) {
        return {a.deg - b.deg, a.ord - b.ord, a.coweight - b.coweight};
    }
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.deg == b.deg && a.ord == b.ord && a.coweight == b.coweight;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
    friend bool operator<(const Signature& a, const Signature& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.ord != b.ord) return a.ord < b.ord;
        return a.coweight < b.coweight;
    }
    bool nonnegative() const { return deg >= 0 && ord >= 0 && coweight >= 0; }

    std::string to_string() const {
        return "[" + std::to_string(deg) + "," + std::to_string(ord) + "," +
               std::to_string(coweight) + "]";
    }
};

/// Signature with the order component obtained by explicit iteration of the
/// raising operator, independent of the weight shortcut.
inline Signature signature(const Poly& z, int n) {
    if (z.is_zero()) throw std::invalid_argument("signature of the zero polynomial");
    if (!is_homogeneous(z) || !is_isobaric(z))
        throw std::invalid_argument("signature requires a homogeneous isobaric polynomial");
    int deg = degree(z);
    long w = weight(z);
    long doubled = static_cast<long>(n) * deg - w;
    if (doubled < 0 || doubled % 2 != 0)
        throw std::invalid_argument("coweight is not a non-negative integer; corrupt input");
    return Signature{deg, order(z, n), static_cast<int>(doubled / 2)};
}

/// Signature of a kernel element, using the ord = weight identity. Cheap;
/// only valid when apply(d, z) = 0, which callers establish.
inline Signature kernel_signature(const Poly& z, int n) {
    if (z.is_zero()) throw std::invalid_argument("signature of the zero polynomial");
    if (!is_homogeneous(z) || !is_isobaric(z))
        throw std::invalid_argument("signature requires a homogeneous isobaric polynomial");
    int deg = degree(z);
    long w = weight(z);
    long doubled = static_cast<long>(n) * deg - w;
    if (w < 0 || doubled < 0 || doubled % 2 != 0)
        throw std::invalid_argument("not a kernel signature; corrupt input");
    return Signature{deg, static_cast<int>(w), static_cast<int>(doubled / 2)};
}

/// All non-negative integer vectors a with sum_j a_j * gens[j] = target,
/// in ascending lexicographic order. Finite because every generator degree
/// is at least 1.
inline std::vector<std::vector<int>> signature_solutions(const Signature& target,
                                                         const std::vector<Signature>& gens) {
    for (const Signature& g : gens)
        if (g.deg < 1) throw std::invalid_argument("generator signatures must have degree >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> current(gens.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, Signature rem) -> void {
        if (!rem.nonnegative()) return;
        if (idx == gens.size()) {
            if (rem.deg == 0 && rem.ord == 0 && rem.coweight == 0) out.push_back(current);
            return;
        }
        const Signature& g = gens[idx];
        int max_e = rem.deg / g.deg;
        if (g.ord > 0) max_e = std::min(max_e, rem.ord / g.ord);
        if (g.coweight > 0) max_e = std::min(max_e, rem.coweight / g.coweight);
        Signature r = rem;
        for (int e = 0; e <= max_e; ++e) {
            current[idx] = e;
            self(self, idx + 1, r);
            r = r - g;
        }
        current[idx] = 0;
    };
    rec(rec, 0, target);
    return out;
}

/// A polynomial generator with bookkeeping for the closure algorithm.
struct GeneratorInfo {
    std::string name;
    Poly poly;
    Signature sig;
    std::string provenance;
    int round = 0;
};

struct SubalgebraBasis {
    std::vector<GeneratorInfo> established;
    std::vector<GeneratorInfo> fresh;

    std::vector<GeneratorInfo> all() const {
        std::vector<GeneratorInfo> v = established;
        v.insert(v.end(), fresh.begin(), fresh.end());
        return v;
    }
};

/// Memo for generator-power products, keyed by the exponent vector with
/// trailing zeros trimmed. Only valid against one fixed generator list;
/// appending generators keeps existing keys meaningful, so one cache can
/// serve a whole closure round.
struct ProductCache {
    std::map<std::vector<int>, Poly> store;
    std::size_t total_terms = 0;
    std::size_t term_budget = 6'000'000;

    void insert(std::vector<int> key, const Poly& value) {
        total_terms += value.term_count();
        if (total_terms > term_budget) {
            store.clear();
            total_terms = value.term_count();
        }
        store.emplace(std::move(key), value);
    }
};

namespace detail {

/// Visits every signature solution together with the corresponding product
/// of generator powers. Enumeration runs over the generators reordered by
/// decreasing size, so wide factors are multiplied in while the partial
/// product is still small; partial products are shared along the
/// enumeration tree and through the optional cross-call cache, whose keys
/// stay in the caller's generator order. The set of visited (solution,
/// product) pairs matches signature_solutions; the visit order is the
/// deterministic tree order.
inline void for_each_signature_product(
    const Signature& target, const std::vector<GeneratorInfo>& gens, int n,
    const std::function<void(const std::vector<int>&, const Poly&)>& visit,
    ProductCache* cache = nullptr) {
    std::vector<Signature> sigs;
    sigs.reserve(gens.size());
    for (const GeneratorInfo& g : gens) sigs.push_back(g.sig);
    std::vector<std::vector<int>> sols = signature_solutions(target, sigs);
    if (sols.empty()) return;

    std::vector<std::size_t> perm(gens.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return gens[a].poly.term_count() > gens[b].poly.term_count();
    });
    std::sort(sols.begin(), sols.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (std::size_t p : perm)
            if (a[p] != b[p]) return a[p] < b[p];
        return false;
    });

    auto prefix_key = [&](const std::vector<int>& sol, std::size_t upto) {
        std::vector<int> key(sol.size(), 0);
        for (std::size_t p = 0; p < upto; ++p) key[perm[p]] = sol[perm[p]];
        while (!key.empty() && key.back() == 0) key.pop_back();
        return key;
    };

    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t idx,
                   const Poly& partial) -> void {
        if (idx == gens.size()) {
            visit(sols[lo], partial);
            return;
        }
        const std::size_t gen = perm[idx];
        std::size_t i = lo;
        Poly power = partial;
        int power_e = 0;
        while (i < hi) {
            int e = sols[i][gen];
            std::size_t j = i;
            while (j < hi && sols[j][gen] == e) ++j;
            if (e > 0) {
                bool hit = false;
                std::vector<int> key;
                if (cache) {
                    key = prefix_key(sols[i], idx + 1);
                    auto it = cache->store.find(key);
                    if (it != cache->store.end()) {
                        power = it->second;
                        power_e = e;
                        hit = true;
                    }
                }
                if (!hit) {
                    while (power_e < e) {
                        power = power * gens[gen].poly;
                        ++power_e;
                    }
                    if (cache) cache->insert(std::move(key), power);
                }
            }
            self(self, i, j, idx + 1, power);
            i = j;
        }
    };
    rec(rec, 0, sols.size(), 0, Poly::constant(n, Rational(1)));
}

}  // namespace detail

/// A rational combination of generator products equal to the tested
/// polynomial: (exponent vector over the basis order, coefficient).
struct MembershipWitness {
    std::vector<std::pair<std::vector<int>, Rational>> combination;
};

/// Batched signature-guided membership for polynomials sharing one
/// (deg, weight) slice, so one exact elimination serves every query.
/// Enumerates the generator products matching the common signature and
/// solves the linear systems on the monomial basis: first on a
/// deterministic subset of slice coordinates, then confirmed (or refuted)
/// on the full coordinate set, so every verdict is exact in both
/// directions.
inline std::vector<std::optional<MembershipWitness>> is_member_batch(
    const std::vector<Poly>& zs, const std::vector<GeneratorInfo>& gens, int n,
    ProductCache* cache = nullptr) {
    if (zs.empty()) return {};
    for (const Poly& z : zs) {
        if (z.is_zero()) throw std::invalid_argument("membership of the zero polynomial");
        if (z.ambient() != n) throw std::invalid_argument("ambient mismatch");
        if (!is_homogeneous(z) || !is_isobaric(z))
            throw std::invalid_argument("membership requires a homogeneous isobaric polynomial");
        if (!apply(weitzenboeck(n), z).is_zero())
            throw std::invalid_argument("membership argument is not annihilated by d");
    }
    Signature target = kernel_signature(zs.front(), n);
    for (const Poly& z : zs)
        if (kernel_signature(z, n) != target)
            throw std::invalid_argument("batched membership requires one common slice");
    const std::size_t k = zs.size();

    std::vector<Signature> sigs;
    sigs.reserve(gens.size());
    for (const GeneratorInfo& g : gens) sigs.push_back(g.sig);
    std::vector<std::vector<int>> sols = signature_solutions(target, sigs);
    std::vector<std::optional<MembershipWitness>> out(k);
    if (sols.empty()) return out;
    const std::size_t r = sols.size();

    ProductCache local_cache;
    if (!cache) cache = &local_cache;

    // Deterministic subsystem coordinates: a prefix of the queried supports
    // plus a prefix of the common slice. The subsystem verdicts are
    // confirmed on the full support below, so the prefix size only affects
    // speed: start lean and enlarge once if the nullspace comes out wide
    // (wide nullspaces make the confirmation pass expensive).
    std::vector<Monomial> slice = enumerate_slice_monomials(n, target.deg, weight(zs.front()));
    auto run_subsystem = [&](std::size_t budget) -> BatchSolution {
        std::map<Monomial, std::size_t, std::greater<Monomial>> coord;
        for (const Poly& z : zs)
            for (const Poly::Term& t : z.terms()) {
                if (coord.size() >= budget) break;
                coord.emplace(t.mono, 0);
            }
        for (const Monomial& m : slice) {
            if (coord.size() >= budget + 64) break;
            coord.emplace(m, 0);
        }
        std::size_t idx = 0;
        for (auto& [m, pos] : coord) pos = idx++;

        QMatrix a(coord.size(), r);
        std::vector<std::vector<Rational>> rhs(k,
                                               std::vector<Rational>(coord.size(), Rational(0)));
        for (std::size_t j = 0; j < k; ++j)
            for (const Poly::Term& t : zs[j].terms()) {
                auto it = coord.find(t.mono);
                if (it != coord.end()) rhs[j][it->second] = t.coeff;
            }
        std::size_t col = 0;
        detail::for_each_signature_product(target, gens, n,
                                           [&](const std::vector<int>&, const Poly& prod) {
            for (const Poly::Term& t : prod.terms()) {
                auto it = coord.find(t.mono);
                if (it != coord.end()) a.at(it->second, col) = t.coeff;
            }
            ++col;
        }, cache);
        return solve_batch(a, rhs);
    };

    BatchSolution subsystem = run_subsystem(2 * (r + 64));
    const auto& null_dirs = subsystem.nullspace;

    // residual_j = z_j - sum beta0_j,i P_i and combos[v] = sum nulldir_v,i P_i
    // in one streaming pass; the enumeration hits the product cache.
    std::vector<Poly> residuals;
    residuals.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        residuals.push_back(subsystem.particular[j] ? zs[j] : Poly::zero(n));
    std::vector<Poly> combos(null_dirs.size(), Poly::zero(n));
    {
        std::size_t col = 0;
        detail::for_each_signature_product(target, gens, n,
                                           [&](const std::vector<int>&, const Poly& prod) {
            for (std::size_t j = 0; j < k; ++j)
                if (subsystem.particular[j] && (*subsystem.particular[j])[col] != 0)
                    residuals[j] = residuals[j] - scale((*subsystem.particular[j])[col], prod);
            for (std::size_t v = 0; v < null_dirs.size(); ++v)
                if (null_dirs[v][col] != 0)
                    combos[v] = combos[v] + scale(null_dirs[v][col], prod);
            ++col;
        }, cache);
    }

    // Queries whose residual misses span{combos} are non-members; the rest
    // get their correction solved exactly over the full support.
    std::vector<std::size_t> pending;
    for (std::size_t j = 0; j < k; ++j) {
        if (!subsystem.particular[j]) continue;  // inconsistent subsystem: not a member
        if (residuals[j].is_zero()) {
            MembershipWitness w;
            for (std::size_t col = 0; col < r; ++col)
                if ((*subsystem.particular[j])[col] != 0)
                    w.combination.push_back({sols[col], (*subsystem.particular[j])[col]});
            out[j] = std::move(w);
        } else if (!null_dirs.empty()) {
            pending.push_back(j);
        }
    }
    if (!pending.empty()) {
        std::map<Monomial, std::size_t, std::greater<Monomial>> rows;
        for (std::size_t j : pending)
            for (const Poly::Term& t : residuals[j].terms()) rows.emplace(t.mono, 0);
        for (const Poly& cpoly : combos)
            for (const Poly::Term& t : cpoly.terms()) rows.emplace(t.mono, 0);
        std::size_t idx = 0;
        for (auto& [m, pos] : rows) pos = idx++;
        QMatrix cm(rows.size(), combos.size());
        for (std::size_t v = 0; v < combos.size(); ++v)
            for (const Poly::Term& t : combos[v].terms()) cm.at(rows[t.mono], v) = t.coeff;
        std::vector<std::vector<Rational>> crhs(pending.size(),
                                                std::vector<Rational>(rows.size(), Rational(0)));
        for (std::size_t p = 0; p < pending.size(); ++p)
            for (const Poly::Term& t : residuals[pending[p]].terms())
                crhs[p][rows[t.mono]] = t.coeff;
        BatchSolution gamma = solve_batch(cm, crhs);
        for (std::size_t p = 0; p < pending.size(); ++p) {
            if (!gamma.particular[p]) continue;
            std::size_t j = pending[p];
            std::vector<Rational> beta = *subsystem.particular[j];
            for (std::size_t v = 0; v < combos.size(); ++v)
                for (std::size_t col = 0; col < r; ++col)
                    beta[col] += (*gamma.particular[p])[v] * null_dirs[v][col];
            MembershipWitness w;
            for (std::size_t col = 0; col < r; ++col)
                if (beta[col] != 0) w.combination.push_back({sols[col], beta[col]});
            out[j] = std::move(w);
        }
    }
    return out;
}

inline std::optional<MembershipWitness> is_member(const Poly& z,
                                                  const std::vector<GeneratorInfo>& gens, int n,
                                                  ProductCache* cache = nullptr) {
    return std::move(is_member_batch({z}, gens, n, cache)[0]);
}

/// Boundary of the product-split exclusion: a candidate tau_k(P) is dropped
/// when P has a proper split u*v with ord(v) >= k (NonStrict) or
/// ord(v) > k (Strict).
enum class SplitRule { NonStrict, Strict };

struct Candidate {
    int k = 0;
    Poly product;
    std::string provenance;
    std::vector<int> exponents;  // over SubalgebraBasis::all() order
    Signature product_sig;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    bool degree_capped = false;
};

/// Enumerates the tau candidates of one closure round: products of basis
/// generators containing at least one fresh factor, filtered by the four
/// exclusion rules, paired with every admissible level k.
inline CandidateSet candidate_products(const SubalgebraBasis& basis, int n,
                                       SplitRule rule = SplitRule::NonStrict,
                                       std::optional<int> degree_cap = std::nullopt) {
    if (basis.established.empty() && basis.fresh.empty())
        throw std::invalid_argument("candidate enumeration over an empty basis");
    std::vector<GeneratorInfo> gens = basis.all();
    const std::size_t fresh_start = basis.established.size();
    CandidateSet result;

    struct Pick {
        std::size_t idx;
        int count;
    };
    std::vector<Pick> picks;

    auto emit = [&](int total_ord, int min_ord, int m, int product_deg) {
        int split_ord = total_ord - min_ord;  // best proper split
        int k_lo = std::max(m, 1);
        if (m >= 2) {
            // tau_k of k+1 factors is always reducible; the k = m boundary
            // follows the same split reduction and matches every candidate
            // table the closure reproduces.
            k_lo = std::max(k_lo, m + 1);
            k_lo = std::max(k_lo, rule == SplitRule::NonStrict ? split_ord + 1 : split_ord);
        }
        int k_hi = std::min(n, total_ord);
        if (k_lo > k_hi) return;
        if (degree_cap && product_deg + 1 > *degree_cap) {
            result.degree_capped = true;
            return;
        }
        std::vector<int> exps(gens.size(), 0);
        std::ostringstream prov;
        bool first = true;
        for (const Pick& p : picks) {
            exps[p.idx] = p.count;
            if (!first) prov << '*';
            prov << gens[p.idx].name;
            if (p.count > 1) prov << '^' << p.count;
            first = false;
        }
        Poly product = Poly::constant(n, Rational(1));
        for (const Pick& p : picks)
            for (int c = 0; c < p.count; ++c) product = product * gens[p.idx].poly;
        for (int k = k_lo; k <= k_hi; ++k) {
            Candidate cand;
            cand.k = k;
            cand.product = product;
            cand.provenance = "tau_" + std::to_string(k) + "(" + prov.str() + ")";
            cand.exponents = exps;
            cand.product_sig = Signature{product_deg, total_ord,
                                         (n * product_deg - total_ord) / 2};
            result.candidates.push_back(std::move(cand));
        }
    };

    const int split_bound = rule == SplitRule::NonStrict ? n - 1 : n;
    auto rec = [&](auto&& self, std::size_t start, int m, int total_ord, int min_ord,
                   bool has_fresh, int product_deg) -> void {
        if (m >= 1 && has_fresh) emit(total_ord, min_ord, m, product_deg);
        if (m >= 1 && m + 2 > n) return;  // a further factor could satisfy no k
        for (std::size_t j = start; j < gens.size(); ++j) {
            int ord_j = gens[j].sig.ord;
            if (ord_j == 0) continue;  // rule 3
            int new_total = total_ord + ord_j;
            int new_min = std::min(min_ord, ord_j);
            // split_ord never decreases as factors are added, so a branch
            // whose best split already exceeds every admissible k is dead.
            if (m + 1 >= 2 && new_total - new_min > split_bound) continue;
            bool merged = !picks.empty() && picks.back().idx == j;
            if (merged)
                ++picks.back().count;
            else
                picks.push_back({j, 1});
            self(self, j, m + 1, new_total, new_min, has_fresh || j >= fresh_start,
                 product_deg + gens[j].sig.deg);
            if (merged)
                --picks.back().count;
            else
                picks.pop_back();
        }
    };
    rec(rec, 0, 0, 0, std::numeric_limits<int>::max(), false, 0);

    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         int ma = 0, mb = 0;
                         for (int e : a.exponents) ma += e;
                         for (int e : b.exponents) mb += e;
                         if (a.k != b.k) return a.k < b.k;
                         if (ma != mb) return ma < mb;
                         return a.provenance < b.provenance;
                     });
    return result;
}

struct AcceptableOptions {
    SplitRule rule = SplitRule::NonStrict;
    std::optional<int> degree_cap;
    std::ostream* progress = nullptr;
};

struct AcceptableSet {
    std::vector<GeneratorInfo> accepted;
    bool degree_capped = false;
    std::size_t candidates_considered = 0;
};

/// Evaluates tau on every candidate, discards zero images, normalizes,
/// deduplicates, and keeps the polynomials that fail membership. The
/// membership passes run in ascending image degree with each acceptance
/// adjoined immediately, so a high-degree image already generated by the
/// basis plus the smaller acceptances of the same round is discarded on the
/// spot instead of surviving until minimization. Deterministic for any
/// thread count.
inline AcceptableSet acceptable_set(const SubalgebraBasis& basis, int n,
                                    const AcceptableOptions& opts = {}) {
    CandidateSet cs = candidate_products(basis, n, opts.rule, opts.degree_cap);
    AcceptableSet out;
    out.degree_capped = cs.degree_capped;
    out.candidates_considered = cs.candidates.size();

    std::vector<Poly> images(cs.candidates.size(), Poly::zero(n));
    parallel_for(cs.candidates.size(), [&](std::size_t i) {
        const Candidate& cand = cs.candidates[i];
        Poly img = tau(cand.k, cand.product, n);
        if (!img.is_zero()) images[i] = normalize_primitive(img);
    });

    std::vector<std::size_t> survivors;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < cs.candidates.size(); ++i) {
        if (images[i].is_zero()) continue;
        if (seen.insert(format_poly(images[i])).second) survivors.push_back(i);
    }
    // Ascending image degree, slices kept contiguous so each batch shares
    // one elimination; ties resolved by the deterministic candidate order.
    std::stable_sort(survivors.begin(), survivors.end(), [&](std::size_t a, std::size_t b) {
        int da = degree(images[a]), db = degree(images[b]);
        if (da != db) return da < db;
        long wa = weight(images[a]), wb = weight(images[b]);
        return wa < wb;
    });

    std::vector<GeneratorInfo> gens = basis.all();
    ProductCache round_cache;
    auto accept = [&](std::size_t i) {
        GeneratorInfo info;
        info.poly = images[i];
        info.sig = kernel_signature(images[i], n);
        info.provenance = cs.candidates[i].provenance;
        gens.push_back(info);
        out.accepted.push_back(std::move(info));
    };

    std::size_t lo = 0;
    while (lo < survivors.size()) {
        std::size_t hi = lo + 1;
        Signature slice_sig = kernel_signature(images[survivors[lo]], n);
        while (hi < survivors.size() &&
               kernel_signature(images[survivors[hi]], n) == slice_sig)
            ++hi;
        auto started = std::chrono::steady_clock::now();
        std::vector<Poly> queries;
        for (std::size_t s = lo; s < hi; ++s) queries.push_back(images[survivors[s]]);
        std::size_t gens_at_batch = gens.size();
        auto verdicts = is_member_batch(queries, gens, n, &round_cache);
        for (std::size_t s = lo; s < hi; ++s) {
            if (verdicts[s - lo].has_value()) continue;  // member of a sub-basis: member
            // The batch verdict is against the basis snapshot; once anything
            // was accepted after the snapshot, confirm individually.
            if (gens.size() == gens_at_batch ||
                !is_member(images[survivors[s]], gens, n, &round_cache).has_value())
                accept(survivors[s]);
        }
        if (opts.progress) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            if (ms > 500)
                *opts.progress << "  slice " << slice_sig.to_string() << " (" << (hi - lo)
                               << " candidates): " << ms << " ms\n";
        }
        lo = hi;
    }
    return out;
}

}  // namespace wk
