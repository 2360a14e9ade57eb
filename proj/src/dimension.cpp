// SPDX-License-Identifier: Apache-2.0
#include "bnchain/dimension.hpp"

#include <algorithm>

#include "bnchain/error.hpp"

namespace bnchain {

namespace {

using Col = std::vector<int>;

struct Kind {
    Stability st;
    int d = 0;
    int i1 = -1, i2 = -1;  // special rows for even degree
};

Kind classify(const BundleSpec& e, const Col& a, const Col& b) {
    Kind k{e.stability()};
    int deg = e.degree();
    if (k.st == Stability::unstable) {
        k.d = (deg - 1) / 2;
        return k;
    }
    k.d = deg / 2;
    std::vector<int> sp;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (a[i] + b[i] == k.d) sp.push_back(i);
    if (sp.size() != 2) throw Error(ErrorCode::invalid_parameter, "component does not have two special rows");
    k.i1 = sp[0];
    k.i2 = sp[1];
    if ((a[k.i1] == a[k.i2]) != (k.st == Stability::dbl))
        throw Error(ErrorCode::invalid_parameter, "special rows disagree with bundle class");
    return k;
}

bool meets(const std::set<int>& x, const std::set<int>& y) {
    for (int i : x)
        if (y.count(i)) return true;
    return false;
}

std::set<int> intersect(const std::set<int>& x, const std::set<int>& y) {
    std::set<int> out;
    for (int i : x)
        if (y.count(i)) out.insert(i);
    return out;
}

std::pair<std::set<int>, std::set<int>> canonical_groups(const Kind& k, const Col& a) {
    std::set<int> g1{k.i1}, g2{k.i2};
    int c1 = a[k.i1], c2 = a[k.i2];
    auto special = [&](int i) { return i == k.i1 || i == k.i2; };
    if (k.i1 - 1 >= 0 && !special(k.i1 - 1) && a[k.i1 - 1] == c1 - 1) g2.insert(k.i1 - 1);
    if (k.i2 - 1 >= 0 && !special(k.i2 - 1) && a[k.i2 - 1] == c2 - 1) g1.insert(k.i2 - 1);
    return {g1, g2};
}

std::pair<std::set<int>, std::set<int>> right_groups(const Kind& k, const Col& a, const Col& b) {
    std::set<int> g1{k.i1}, g2{k.i2};
    int c1 = a[k.i1], c2 = a[k.i2];
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (i == k.i1 || i == k.i2 || a[i] + b[i] != k.d - 1) continue;
        if (a[i] == c2) g1.insert(i);
        if (a[i] == c1) g2.insert(i);
    }
    return {g1, g2};
}

void require(const BundleSpec& e, Stability st, const char* what) {
    if (e.stability() != st)
        throw Error(ErrorCode::invalid_parameter, std::string(what) + " needs a " + stability_name(st) + " bundle, got " + e.str());
}

int count_meeting(const ConfigurationPartition& cfg, const std::set<int>& s) {
    return static_cast<int>(std::count_if(cfg.blocks.begin(), cfg.blocks.end(),
                                          [&](auto& b) { return meets(b, s); }));
}

}  // namespace

std::set<int> nonrepeated(const Col& col) {
    std::set<int> out;
    for (int i = 0; i < static_cast<int>(col.size()); ++i)
        if (std::count(col.begin(), col.end(), col[i]) == 1) out.insert(i);
    return out;
}

ConfigurationPartition merge_blocks(const ConfigurationPartition& cfg, const std::set<int>& s) {
    if (s.empty()) return cfg;
    ConfigurationPartition out{cfg.node, {}};
    std::set<int> big = s;
    for (auto& b : cfg.blocks) {
        if (meets(b, s)) big.insert(b.begin(), b.end());
        else out.blocks.push_back(b);
    }
    out.blocks.push_back(big);
    return out;
}

bool same_partition(const ConfigurationPartition& x, const ConfigurationPartition& y) {
    auto sx = x.blocks, sy = y.blocks;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    return sx == sy;
}

std::vector<std::set<int>> forced_groups(const BundleSpec& e, const Col& a, const Col& b) {
    auto k = classify(e, a, b);
    auto L = nonrepeated(a);
    if (k.st == Stability::dbl) return {};
    if (k.st == Stability::semistable) {
        auto [g1, g2] = canonical_groups(k, a);
        return {intersect(g1, L), intersect(g2, L)};
    }
    std::set<int> s;
    for (int i : L)
        if (a[i] + b[i] >= k.d) s.insert(i);
    return {s};
}

int m_bound_semistable(const BundleSpec& e, const ConfigurationPartition& cfg, const Col& a, const Col& b) {
    require(e, Stability::semistable, "m_bound_semistable");
    std::set<int> target;
    for (auto& gset : forced_groups(e, a, b)) target.insert(gset.begin(), gset.end());
    return 2 - count_meeting(cfg, target);
}

int m_bound_double(const BundleSpec& e) {
    require(e, Stability::dbl, "m_bound_double");
    return 0;
}

UnstableBound m_bound_unstable_detail(const BundleSpec& e, const Col& a, const Col& b) {
    require(e, Stability::unstable, "m_bound_unstable");
    int d = (e.degree() - 1) / 2;
    UnstableBound r;
    for (int i : nonrepeated(a))
        if (a[i] + b[i] >= d) r.eps = 1;
    for (int i : nonrepeated(b))
        if (a[i] + b[i] == d - 1) r.M.push_back(i + 1);
    r.bound = 1 - r.eps + static_cast<int>(r.M.size());
    return r;
}

int m_bound_unstable(const BundleSpec& e, const Col& a, const Col& b) {
    return m_bound_unstable_detail(e, a, b).bound;
}

ConfigurationPartition propagate_configuration(const BundleSpec& e, const ConfigurationPartition& cfg,
                                               const Col& a, const Col& b) {
    auto k = classify(e, a, b);
    auto R = nonrepeated(b);
    ConfigurationPartition out{cfg.node + 1, {}};
    if (k.st == Stability::dbl) {
        for (auto& blk : cfg.blocks) out.blocks.push_back(intersect(blk, R));
    } else if (k.st == Stability::semistable) {
        auto [g1, g2] = right_groups(k, a, b);
        out.blocks.push_back(intersect(g1, R));
        out.blocks.push_back(intersect(g2, R));
        std::set<int> can = g1;
        can.insert(g2.begin(), g2.end());
        int c = a[k.i1] + a[k.i2];
        for (auto& blk : cfg.blocks) {
            std::vector<int> rows;
            for (int i : blk)
                if (!can.count(i)) rows.push_back(i);
            std::set<int> used;
            for (std::size_t x = 0; x < rows.size(); ++x)
                for (std::size_t y = x + 1; y < rows.size(); ++y) {
                    int i = rows[x], j = rows[y];
                    if (used.count(i) || used.count(j) || a[i] + a[j] != c - 1) continue;
                    out.blocks.push_back(intersect({i, j}, R));
                    used.insert(i);
                    used.insert(j);
                }
        }
    } else {
        std::set<int> s;
        for (int i : R)
            if (a[i] + b[i] >= k.d) s.insert(i);
        out.blocks.push_back(s);
    }
    std::erase_if(out.blocks, [](auto& blk) { return blk.empty(); });
    std::set<int> cov;
    for (auto& blk : out.blocks) cov.insert(blk.begin(), blk.end());
    for (int i : R)
        if (!cov.count(i)) out.blocks.push_back({i});
    return out;
}

std::map<int, int> correction_table(MoveKind kind, int g, int k, int q) {
    const int k1 = k / 2;
    std::map<int, int> c;
    if (kind == MoveKind::first) {
        c[g + 4] = -1;
        if (k1 > 2) c[g + 8] = -1;
        c[g + 9] = -1;
        for (int s = 0; s <= q - 2; ++s) {
            c[g + 11 + 11 * s] = -1;
            c[g + 13 + 11 * s] = -2;
        }
    } else if (kind == MoveKind::third && k1 >= 3) {
        c[g + k1 + 3] = -1;
    }
    return c;
}

std::map<int, int> expected_node_bounds(MoveKind kind, int g, int k, int q) {
    const int k1 = k / 2;
    const int gp = apply_move({g, k}, kind, q).g;
    std::map<int, int> e;
    if (kind == MoveKind::first) {
        const int head[9] = {1, 2, 0, 1, 1, k1 > 2 ? 2 : 1, 0, 2, 0};
        for (int i = 0; i < 9; ++i) e[g + 1 + i] = head[i];
        const int sblk[11] = {3, 2, 0, 1, 1, 1, 2, 0, 0, 2, 0};
        for (int s = 0; s <= q - 2; ++s)
            for (int i = 0; i < 11; ++i) e[g + 11 * s + 10 + i] = sblk[i];
        const int h = g + 11 * q - 2;
        for (int l = 0; l <= k1 - 3 * q; ++l) {
            e[h + 4 * l + 1] = 2;
            e[h + 4 * l + 2] = 0;
            e[h + 4 * l + 3] = 2;
            e[h + 4 * l + 4] = 0;
        }
        e[gp - 3] = 0;
        e[gp - 2] = 2;
        e[gp - 1] = 0;
        e[gp] = 0;
    } else if (kind == MoveKind::second) {
        for (int j = g + 1; j <= gp - 2; ++j) e[j] = 1;
        e[gp - 1] = 0;
        e[gp] = 0;
    } else {
        // later assignments win where ranges overlap at small k1
        const int head[5] = {2, 0, 2, 0, 2};
        for (int i = 0; i < 5; ++i) e[g + 1 + i] = head[i];
        for (int j = 1; j <= k1 - 3; ++j) e[g + 5 + j] = 1;
        e[g + k1 + 3] = 0;
        e[g + k1 + 4] = 0;
        for (int s = 0; s <= k1 - 2; ++s) {
            e[g + k1 + 5 + 2 * s] = 2;
            e[g + k1 + 6 + 2 * s] = 0;
        }
        e[gp] = 0;
    }
    return e;
}

namespace {

struct EngineNode {
    std::string rule;
    int bound = 0;
    int merges = 0;
};

// walks the whole chain; at node seed_g+1 rows 1 and seed_k+1 are fused
std::vector<EngineNode> run_engine(const ChainLedger& l, int seed_g, int seed_k) {
    const auto& t = l.table;
    ConfigurationPartition cfg{1, {}};
    for (int i : nonrepeated(t.col(0))) cfg.blocks.push_back({i});
    std::vector<EngineNode> out;
    for (int j = 1; j <= t.g; ++j) {
        const auto& a = t.a_of(j);
        const auto& b = t.b_of(j);
        const auto& e = l.bundles[j - 1];
        cfg.node = j;
        if (seed_g > 0 && j == seed_g + 1) cfg = merge_blocks(cfg, intersect({0, seed_k}, nonrepeated(a)));
        auto pre = cfg;
        EngineNode n;
        for (auto& gset : forced_groups(e, a, b)) {
            if (gset.empty()) continue;
            n.merges += std::max(0, count_meeting(pre, gset) - 1);
            cfg = merge_blocks(cfg, gset);
        }
        switch (e.stability()) {
            case Stability::semistable:
                n.rule = "semistable";
                n.bound = m_bound_semistable(e, cfg, a, b);
                break;
            case Stability::dbl:
                n.rule = "double";
                n.bound = m_bound_double(e);
                break;
            case Stability::unstable:
                n.rule = "unstable";
                n.bound = m_bound_unstable(e, a, b);
                break;
        }
        out.push_back(n);
        cfg = propagate_configuration(e, cfg, a, b);
    }
    return out;
}

std::string correction_tag(MoveKind kind, int off, int k1) {
    if (kind == MoveKind::third) return "sum-rule codim at g+k1+3";
    if (off == 8) return "codim carried over from g+7";
    if (off == 4 || off == 9) return "sum-rule codim at g+" + std::to_string(off);
    (void)k1;
    return "s-block codim at g+" + std::to_string(off);
}

void add_block(std::vector<BlockSum>& v, std::string name, int first, int last, int expected,
               const std::vector<NodeEntry>& entries) {
    BlockSum b{std::move(name), first, last, 0, expected, 0, 0};
    for (auto& e : entries)
        if (e.rule != "step1" && e.j >= first && e.j <= last) {
            b.sum += e.bound + e.correction;
            b.correction += e.correction;
            b.engine_merges += e.engine_merges;
        }
    v.push_back(b);
}

}  // namespace

bool FiberBoundReport::ok() const {
    if (total != rho) return false;
    for (auto& b : blocks) {
        if (b.expected >= 0 && b.sum != b.expected) return false;
        if (b.correction != -b.engine_merges) return false;
    }
    return true;
}

MoveAccount account_move(const ChainLedger& out, const Move& mv) {
    const int g = mv.from.g, k = mv.from.k, k1 = k / 2;
    auto nodes = run_engine(out, g, k);
    auto corr = correction_table(mv.kind, g, k, mv.q);
    MoveAccount acc;
    acc.move = mv;
    acc.step1 = mv.kind == MoveKind::third ? 0 : 1;
    for (int j = g + 1; j <= out.g; ++j) {
        const auto& n = nodes[j - 1];
        NodeEntry e{j, n.rule, n.bound, 0, n.merges, "", 0};
        if (auto it = corr.find(j); it != corr.end()) {
            e.correction = it->second;
            e.tag = correction_tag(mv.kind, j - g, k1);
        }
        acc.entries.push_back(e);
    }
    const int gp = out.g;
    if (mv.kind == MoveKind::first) {
        add_block(acc.blocks, "head g+1..g+9", g + 1, g + 9, 6, acc.entries);
        for (int s = 0; s <= mv.q - 2; ++s)
            add_block(acc.blocks, "s-block " + std::to_string(s), g + 10 + 11 * s, g + 20 + 11 * s, 9, acc.entries);
        const int h = g + 11 * mv.q - 2;
        for (int l = 0; l <= k1 - 3 * mv.q; ++l)
            add_block(acc.blocks, "l-block " + std::to_string(l), h + 4 * l + 1, h + 4 * l + 4, 4, acc.entries);
        add_block(acc.blocks, "tail", gp - 3, gp, 2, acc.entries);
    } else if (mv.kind == MoveKind::second) {
        add_block(acc.blocks, "second", g + 1, gp, gp - g - 2, acc.entries);
    } else {
        add_block(acc.blocks, "third", g + 1, gp, 3 * k1, acc.entries);
    }
    if (acc.step1) acc.entries.insert(acc.entries.begin(), NodeEntry{g, "step1", 1, 0, 0, "extension of the seed", 0});
    acc.total = 0;
    for (auto& e : acc.entries) acc.total += e.bound + e.correction;
    return acc;
}

FiberBoundReport account_dimension(const ChainLedger& ledger) {
    ChainLedger cur = base_case();
    FiberBoundReport r;
    {
        auto nodes = run_engine(cur, 0, 0);
        r.entries.push_back({1, "base", -2, 0, 0, "stack dimension of the first component", 0});
        for (int j = 2; j <= cur.g; ++j)
            r.entries.push_back({j, nodes[j - 1].rule, nodes[j - 1].bound, 0, nodes[j - 1].merges, "", 0});
        add_block(r.blocks, "base", 1, cur.g, 0, r.entries);
    }
    for (auto& mv : ledger.provenance) {
        if (mv.from != cur.pair())
            throw Error(ErrorCode::cannot_account, "provenance breaks at (" + std::to_string(mv.from.g) + "," +
                                                       std::to_string(mv.from.k) + ")");
        try {
            cur = apply_construction(cur, mv.kind, mv.q);
        } catch (const Error& e) {
            throw Error(ErrorCode::cannot_account, std::string("replay failed: ") + e.what());
        }
        auto acc = account_move(cur, mv);
        r.step1 += acc.step1;
        r.entries.insert(r.entries.end(), acc.entries.begin(), acc.entries.end());
        r.blocks.insert(r.blocks.end(), acc.blocks.begin(), acc.blocks.end());
    }
    if (!(cur.table == ledger.table))
        throw Error(ErrorCode::cannot_account, "ledger table differs from its provenance replay");
    int run = 0;
    for (auto& e : r.entries) {
        run += e.bound + e.correction;
        e.running = run;
    }
    r.total = run;
    r.rho = static_cast<int>(rho(ledger.pair()));
    return r;
}

nlohmann::json fiber_report_to_json(const FiberBoundReport& r) {
    auto nodes = nlohmann::json::array();
    for (auto& e : r.entries)
        nodes.push_back({{"node", e.j}, {"rule", e.rule}, {"bound", e.bound}, {"correction", e.correction},
                         {"engine_merges", e.engine_merges}, {"tag", e.tag}, {"running_total", e.running}});
    auto blocks = nlohmann::json::array();
    for (auto& b : r.blocks)
        blocks.push_back({{"name", b.name}, {"first", b.first}, {"last", b.last}, {"sum", b.sum},
                          {"expected", b.expected}, {"correction", b.correction}, {"engine_merges", b.engine_merges}});
    return {{"nodes", nodes}, {"blocks", blocks}, {"step1", r.step1}, {"total", r.total}, {"rho", r.rho}, {"ok", r.ok()}};
}

}  // namespace bnchain
