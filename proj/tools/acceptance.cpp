// SPDX-License-Identifier: Apache-2.0
// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <boost/rational.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bnchain/constructions.hpp"
#include "bnchain/coverage.hpp"
#include "bnchain/determinant.hpp"
#include "bnchain/dimension.hpp"
#include "bnchain/error.hpp"
#include "bnchain/lstab.hpp"
#include "bnchain/numerics.hpp"
#include "bnchain/pipeline.hpp"

using namespace bnchain;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// every ledger a chain of moves reaches with k' <= kmax; seeds are odd-k ledgers
std::vector<ChainLedger> chain_ledgers(int kmax) {
    std::vector<ChainLedger> out, frontier{base_case()};
    while (!frontier.empty()) {
        auto l = frontier.back();
        frontier.pop_back();
        out.push_back(l);
        if (l.k % 2 == 0) continue;
        if (l.k + 3 <= kmax) out.push_back(construct_third(l));
        if (l.k + 2 <= kmax) frontier.push_back(construct_second(l));
        if (l.k + 4 <= kmax)
            for (int q = 1; q <= max_speed(l.k); ++q) frontier.push_back(construct_first(l, q));
    }
    return out;
}

std::string pair_str(const PairGK& p) { return "(" + std::to_string(p.g) + "," + std::to_string(p.k) + ")"; }

Outcome base_case_check() {
    auto b = base_case();
    if (!check_standard(b.table).ok()) return {false, "base table is not standard"};
    const std::vector<BundleSpec> listed{{0, 5, 0, 5}, {0, 5, 2, 4}, {0, 5, 3, 2},
                                         {1, 4, 4, 1}, {3, 2, 4, 0}, {5, 0, 5, 0}};
    for (int j = 1; j <= 6; ++j) {
        auto e = infer_bundle(b.table.a_of(j), b.table.b_of(j), b.table.d[j - 1]);
        if (!e.same_as(listed[j - 1])) return {false, "E_" + std::to_string(j) + " inferred as " + e.str()};
    }
    if (!check_canonical_chain(b.bundles, b.table.d).ok()) return {false, "canonical determinant fails"};
    auto r = account_dimension(b);
    if (r.total != 0 || rho(b.pair()) != 0) return {false, "total " + std::to_string(r.total)};
    return {true, "standard, 6 bundles, canonical det, total 0"};
}

Outcome delta_rho_check() {
    long long n = 0;
    for (int k1 = 2; k1 <= 100; ++k1) {
        PairGK p{k1 * k1 + k1, 2 * k1 + 1};
        auto d = [&](MoveKind m, int q) { return rho(apply_move(p, m, q)) - rho(p); };
        for (int q = 1; q <= max_speed(p.k); ++q, ++n)
            if (d(MoveKind::first, q) != 4 * k1 + 4 - 3 * q || delta_rho_first(k1, q) != 4 * k1 + 4 - 3 * q)
                return {false, "first move, k1=" + std::to_string(k1) + " q=" + std::to_string(q)};
        if (d(MoveKind::second, 0) != 2 * k1 + 1 || delta_rho_second(k1) != 2 * k1 + 1)
            return {false, "second move, k1=" + std::to_string(k1)};
        if (d(MoveKind::third, 0) != 3 * k1 || delta_rho_third(k1) != 3 * k1)
            return {false, "third move, k1=" + std::to_string(k1)};
        n += 2;
    }
    return {true, std::to_string(n) + " identities"};
}

Outcome golden_check() {
    int matched = 0, ledgers = 0;
    std::set<std::string> families;
    for (auto& l : chain_ledgers(21)) {
        if (l.provenance.empty()) continue;
        ++ledgers;
        auto r = verify_construction_tables(l);
        for (auto& e : r.entries) {
            if (e.status == GoldenEntry::Status::mismatch)
                return {false, pair_str(l.pair()) + " " + e.formula + " at column " + std::to_string(e.column)};
            if (e.status == GoldenEntry::Status::match) {
                ++matched;
                families.insert(e.formula.substr(0, e.formula.find(' ')));
            }
        }
    }
    for (const char* f : {"second", "third", "first-head", "first-s-block", "first-l-block"})
        if (!families.count(f)) return {false, std::string(f) + " never applied"};
    return {true, std::to_string(matched) + " columns on " + std::to_string(ledgers) + " ledgers"};
}

Outcome step1_check() {
    int n = 0;
    for (auto& l : chain_ledgers(21)) {
        if (l.k % 2 == 0) continue;
        std::vector<NewComponents> moves{second_components(l.g, l.k), third_components(l.g, l.k)};
        for (int q = 1; q <= max_speed(l.k); ++q) moves.push_back(first_components(l.g, l.k, q));
        for (auto& nc : moves) {
            StepParams p{nc.N, nc.m};
            auto v = verify_step1(l.table, p, step1_extend(l.table, p));
            if (!v.empty())
                return {false, pair_str(l.pair()) + " N=" + std::to_string(nc.N) + ": " + format_violations(v, 2)};
            ++n;
        }
    }
    return {true, std::to_string(n) + " extensions"};
}

Outcome dimension_check() {
    int pairs = 0, nodes = 0, sblocks = 0;
    for (auto& p : enumerate_region(41)) {
        auto l = replay(derivation_path(p).moves);
        auto r = account_dimension(l);
        if (r.total != rho(p)) return {false, pair_str(p) + " total " + std::to_string(r.total)};
        // per-node bounds against the listed values, move by move
        ChainLedger cur = base_case();
        for (auto& mv : l.provenance) {
            cur = apply_construction(cur, mv.kind, mv.q);
            auto acc = account_move(cur, mv);
            auto exp = expected_node_bounds(mv.kind, mv.from.g, mv.from.k, mv.q);
            for (auto& e : acc.entries) {
                if (e.rule == "step1") continue;
                auto it = exp.find(e.j);
                if (it == exp.end() || it->second != e.bound)
                    return {false, pair_str(p) + " node " + std::to_string(e.j) + " bound " + std::to_string(e.bound)};
                ++nodes;
            }
            for (auto& b : acc.blocks) {
                bool head = b.name.rfind("head", 0) == 0, sb = b.name.rfind("s-block", 0) == 0;
                if ((head && b.sum != 6) || (sb && b.sum != 9) || b.correction != -b.engine_merges)
                    return {false, pair_str(p) + " block " + b.name + " sum " + std::to_string(b.sum)};
                sblocks += sb;
            }
        }
        ++pairs;
    }
    if (sblocks == 0) return {false, "no s-block exercised"};
    return {true, std::to_string(pairs) + " pairs, " + std::to_string(nodes) + " node bounds, " +
                      std::to_string(sblocks) + " s-blocks"};
}

LChain random_chain(std::mt19937& rng) {
    LChain c;
    int n = std::uniform_int_distribution<int>(2, 8)(rng);
    c.A = std::uniform_int_distribution<int>(-2, 2)(rng);
    for (int j = 0; j < n; ++j) {
        int f = std::uniform_int_distribution<int>(1, 4)(rng);
        int x1 = f / 2, x2 = (f + 1) / 2;
        c.comps.push_back({x1, x2, x1 == x2 && rng() % 3 == 0});
    }
    for (int t = 0; t + 1 < n; ++t) c.glue.push_back(static_cast<std::uint8_t>(rng() % 16));
    return c;
}

Outcome lstab_check() {
    auto ex = gap_two_example(false);
    bool l = is_l_semistable_bruteforce(ex).semistable;
    bool mu = mu_reference_check(ex).semistable;
    if (!l || mu || ex.chi_total() != 0) return {false, "example verdict differs"};
    auto sw = single_interval_sweep(6, 3);
    if (sw.disagreements) return {false, std::to_string(sw.disagreements) + " disagreements, first " + sw.first_disagreement};
    std::mt19937 rng(1000);
    for (int it = 0; it < 1000; ++it) {
        auto c = random_chain(rng);
        int node = std::uniform_int_distribution<int>(1, c.n() - 1)(rng);
        int amount = std::uniform_int_distribution<int>(-3, 3)(rng);
        if (is_l_semistable_bruteforce(c).semistable != is_l_semistable_bruteforce(twist_equivalence(c, node, amount)).semistable)
            return {false, "twist changes the verdict on " + lchain_to_json(c).dump()};
    }
    return {true, "example ok, sweep " + std::to_string(sw.chains) + " chains agree, 1000 twists"};
}

std::vector<PairGK> closed_form(int k_max) {
    std::vector<PairGK> out;
    for (int k = 5; k <= k_max; ++k) {
        long long k1 = k / 2, lo, hi;
        if (k % 2) {
            lo = k1 * k1 + k1 - ((k1 - 2) * (k1 - 2) + 3) / 12;
            hi = k1 * k1 + k1;
        } else {
            if (k < 8) continue;
            lo = k1 * k1 - (k1 - 4) * (k1 - 4) / 12 - 1;
            hi = k1 * k1 - 1;
        }
        for (long long g = lo; g <= hi; ++g)
            if (3 * g - 3 - 1LL * k * (k + 1) / 2 >= 0) out.push_back({static_cast<int>(g), k});
    }
    return out;
}

Outcome coverage_check() {
    auto r = enumerate_region(41);
    if (r != closed_form(41)) return {false, "enumeration differs from the closed form"};
    for (auto& p : r) {
        auto rep = verify_pair(p);
        if (!rep.ok()) return {false, pair_str(p) + " fails at " + rep.failed_stage()};
    }
    return {true, std::to_string(r.size()) + " pairs verified end to end"};
}

Outcome asymptotic_check() {
    using R = boost::rational<long long>;
    for (int k1 = 20; k1 <= 500; ++k1) {
        R d = asymptotic_ratio(k1) - R(11, 12);
        if (!(d > 0 && d < R(2, k1))) return {false, "k1=" + std::to_string(k1)};
    }
    return {true, "k1 in [20,500]"};
}

Outcome exclusion_check() {
    auto r = enumerate_region(41);
    for (auto& p : r)
        if (!strict_semistable_excluded(p).excluded) return {false, pair_str(p)};
    return {true, std::to_string(r.size()) + " pairs"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "base case", 1, base_case_check},
        {2, "rho differences", 1, delta_rho_check},
        {3, "golden sequences up to k=21", 10, golden_check},
        {4, "Step-1 re-verification up to k=21", 0, step1_check},
        {5, "dimension accounting on region(41)", 30, dimension_check},
        {6, "l-semistability", 60, lstab_check},
        {7, "coverage of region(41)", 120, coverage_check},
        {8, "asymptotic ratio", 0, asymptotic_check},
        {9, "strict semistable exclusion", 0, exclusion_check},
    };
    int failed = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream lim;
        if (c.limit > 0) {
            lim << ", limit " << c.limit << " s";
            if (s >= c.limit) {
                o.pass = false;
                o.detail += " (over time)";
            }
        }
        std::printf("%s %d %s: %s [%.3f s%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s,
                    lim.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
