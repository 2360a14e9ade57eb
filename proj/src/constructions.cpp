// SPDX-License-Identifier: Apache-2.0
#include "bnchain/constructions.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "bnchain/error.hpp"

namespace bnchain {

namespace {

using Col = std::vector<int>;

const int kBase[5][10] = {
    {5, 0, 5, 0, 5, 0, 4, 1, 3, 2},
    {5, 0, 5, 0, 4, 1, 4, 1, 2, 3},
    {3, 2, 4, 1, 3, 2, 2, 3, 2, 3},
    {3, 2, 2, 3, 2, 3, 1, 4, 0, 5},
    {2, 3, 2, 3, 1, 4, 1, 4, 0, 5},
};

std::vector<Col> all_cols(const VanishingTable& t) {
    std::vector<Col> c;
    for (int i = 0; i < 2 * t.g; ++i) c.push_back(t.col(i));
    return c;
}

VanishingTable pack(int g, int k, std::vector<int> d, std::vector<Col> cols) {
    VanishingTable t;
    t.g = g;
    t.k = k;
    t.d = std::move(d);
    t.left = cols.front();
    t.right = cols.back();
    t.matrix.assign(cols.begin() + 1, cols.end() - 1);
    return t;
}

// old components keep their summands with each right twist raised by N
void fill_ledger_bundles(ChainLedger& out, const ChainLedger& seed, int N) {
    const auto& t = out.table;
    out.bundles.clear();
    out.taus.clear();
    for (int j = 1; j <= t.g; ++j) {
        BundleSpec e;
        try {
            e = infer_bundle(t.a_of(j), t.b_of(j), t.d[j - 1]);
        } catch (const Error& err) {
            throw Error(ErrorCode::construction_bug,
                        "component " + std::to_string(j) + " infeasible: " + err.what());
        }
        if (j <= seed.g) {
            auto s = seed.bundles[j - 1];
            BundleSpec want{s.l1, s.r1 + N, s.l2, s.r2 + N};
            if (!e.same_as(want))
                throw Error(ErrorCode::construction_bug, "component " + std::to_string(j) +
                                                             " changed bundle: " + e.str() + " vs " + want.str());
        }
        out.bundles.push_back(e);
        out.taus.push_back(std::nullopt);
    }
}

ChainLedger extend(const ChainLedger& seed, const VanishingTable& s, const NewComponents& nc,
                   const Move& mv) {
    auto cols = all_cols(s);
    auto d = s.d;
    if (static_cast<int>(nc.bundles.size()) != nc.gp - s.g)
        throw Error(ErrorCode::construction_bug, "component count mismatch");
    for (std::size_t idx = 0; idx < nc.bundles.size(); ++idx) {
        int j = s.g + 1 + static_cast<int>(idx);
        Col a;
        for (int x : cols[2 * j - 3]) a.push_back(nc.gp - 1 - x);
        ConciseTriple tr{nc.bundles[idx], a, nc.taus[idx]};
        Col b;
        int deg = nc.bundles[idx].degree();
        try {
            b = decode_concise(tr, deg / 2);
        } catch (const Error& e) {
            throw Error(ErrorCode::construction_bug,
                        "component " + std::to_string(j) + ": " + e.what());
        }
        cols.push_back(a);
        cols.push_back(b);
        d.push_back(deg);
    }
    if (cols.back() != boundary_sequence_rev(s.k))
        throw Error(ErrorCode::construction_bug, "last column is not a(k')^rev");
    ChainLedger out;
    out.g = nc.gp;
    out.k = s.k;
    out.table = pack(nc.gp, s.k, d, cols);
    fill_ledger_bundles(out, seed, nc.N);
    for (std::size_t idx = 0; idx < nc.bundles.size(); ++idx) {
        int j = s.g + static_cast<int>(idx);
        if (!out.bundles[j].same_as(nc.bundles[idx]))
            throw Error(ErrorCode::construction_bug, "component " + std::to_string(j + 1) +
                                                         " reads back as " + out.bundles[j].str());
    }
    for (int j = 1; j <= out.g; ++j) {
        if (out.bundles[j - 1].stability() != Stability::unstable) continue;
        if (j > seed.g) out.taus[j - 1] = nc.taus[j - seed.g - 1];
        else out.taus[j - 1] = check_unstable_basis(out.table.a_of(j), out.table.b_of(j), (out.table.d[j - 1] - 1) / 2).tau;
    }
    out.provenance = seed.provenance;
    out.provenance.push_back(mv);
    auto mode = mv.kind == MoveKind::third ? StandardMode::weak : StandardMode::full;
    auto rep = check_standard(out.table, mode);
    if (!rep.ok()) throw Error(ErrorCode::construction_bug, "output not standard: " + format_violations(rep.violations));
    return out;
}

void require_odd_seed(const ChainLedger& seed) {
    if (seed.k % 2 == 0 || seed.k < 5)
        throw Error(ErrorCode::invalid_parameter, "constructions need odd k >= 5");
    if (seed.weak_standard()) throw Error(ErrorCode::invalid_parameter, "seed comes from the third construction");
}

// golden sequence tokens: single, double, descending run of doubles
struct Tok {
    char kind;
    int x, y, count;
};
Tok S(int x) { return {'s', x, 0, INT_MIN}; }
Tok D(int x) { return {'d', x, 0, INT_MIN}; }
Tok R(int x, int y, int count = INT_MIN) { return {'r', x, y, count}; }

std::optional<Col> build(const std::vector<Tok>& toks) {
    Col out;
    for (auto& t : toks) {
        if (t.kind == 's') out.push_back(t.x);
        else if (t.kind == 'd') out.insert(out.end(), {t.x, t.x});
        else {
            Col seg;
            for (int v = t.x; v >= t.y; --v) seg.insert(seg.end(), {v, v});
            if (t.count != INT_MIN && static_cast<int>(seg.size()) != std::max(t.count, 0)) return std::nullopt;
            out.insert(out.end(), seg.begin(), seg.end());
        }
    }
    return out;
}

void golden(GoldenReport& rep, const ChainLedger& l, const std::string& name, int column,
            const std::vector<Tok>& toks) {
    GoldenEntry e;
    e.formula = name;
    e.column = column;
    if (column < 0 || column >= 2 * l.g) {
        e.note = "column out of range";
        rep.entries.push_back(e);
        return;
    }
    e.actual = l.table.col(column);
    auto exp = build(toks);
    if (!exp) {
        e.status = GoldenEntry::Status::mismatch;
        e.note = "run length disagrees with its stated count";
    } else {
        e.expected = *exp;
        e.status = e.expected == e.actual ? GoldenEntry::Status::match : GoldenEntry::Status::mismatch;
    }
    rep.entries.push_back(e);
}

void skipped(GoldenReport& rep, const std::string& name, const std::string& why) {
    GoldenEntry e;
    e.formula = name;
    e.note = why;
    rep.entries.push_back(e);
}

Col step_up(int e, int m) {
    Col c{e};
    for (int x = 1; x < m; ++x) c.insert(c.end(), {e + x, e + x});
    c.push_back(e + m);
    return c;
}
Col pairs_up(int e, int m) {
    Col c;
    for (int x = 0; x < m; ++x) c.insert(c.end(), {e + x, e + x});
    return c;
}
Col negate_shape(Col c, int e) {
    for (auto& x : c) x = 2 * e - x;
    return c;
}

}  // namespace

const char* move_name(MoveKind m) {
    switch (m) {
        case MoveKind::first: return "first";
        case MoveKind::second: return "second";
        case MoveKind::third: return "third";
    }
    return "?";
}

PairGK apply_move(const PairGK& p, MoveKind kind, int q) {
    switch (kind) {
        case MoveKind::first: return {p.g + 2 * p.k + 4 - q, p.k + 4};
        case MoveKind::second: return {p.g + p.k + 1, p.k + 2};
        case MoveKind::third: return {p.g + 3 * (p.k + 1) / 2, p.k + 3};
    }
    return p;
}

ChainLedger base_case() {
    ChainLedger l;
    l.g = 6;
    l.k = 5;
    l.table = make_table(6, 5, {10, 11, 10, 10, 9, 10});
    for (int c = 1; c <= 10; ++c)
        for (int i = 0; i < 5; ++i) l.table.col(c)[i] = kBase[i][c - 1];
    for (int j = 1; j <= 6; ++j) {
        auto e = infer_bundle(l.table.a_of(j), l.table.b_of(j), l.table.d[j - 1]);
        l.bundles.push_back(e);
        if (e.stability() == Stability::unstable)
            l.taus.push_back(check_unstable_basis(l.table.a_of(j), l.table.b_of(j), (l.table.d[j - 1] - 1) / 2).tau);
        else
            l.taus.push_back(std::nullopt);
    }
    return l;
}

std::vector<int> terminal_sequence(int N, int k1, int m) {
    if (N <= k1 + m) throw Error(ErrorCode::invalid_parameter, "need N > k1 + m");
    Col s{N + k1};
    for (int x = N + k1 - 1; x >= N; --x) s.insert(s.end(), {x, x});
    s.push_back(N - 1 - k1);
    for (int x = N - 2 - k1; x >= N - m - k1; --x) s.insert(s.end(), {x, x});
    s.push_back(N - m - k1 - 1);
    return s;
}

VanishingTable step1_extend(const VanishingTable& t, const StepParams& p) {
    const int g = t.g, k = t.k, k1 = k / 2, N = p.N, m = p.m;
    if (k % 2 == 0) throw Error(ErrorCode::invalid_parameter, "step 1 needs odd k");
    if (m <= 0 || N <= k1 + m) throw Error(ErrorCode::invalid_parameter, "need m > 0 and N > k1 + m");
    auto rep = check_standard(t);
    if (!rep.ok()) throw Error(ErrorCode::invalid_parameter, "seed not standard: " + format_violations(rep.violations));

    const int K = k + 2 * m, gp = g + N;
    std::vector<int> dp;
    for (int x : t.d) dp.push_back(x + 2 * N);
    std::vector<Col> C(2 * g, Col(K, 0));
    C[0] = boundary_sequence(K);
    C[2 * g - 1] = terminal_sequence(N, k1, m);
    for (int c = 1; c <= 2 * g - 2; ++c)
        for (int i = 0; i < k; ++i) C[c][i] = t.col(c)[i] + (c % 2 ? N : 0);
    for (int i = k; i < K; ++i) C[1][i] = gp - 2 - i / 2;

    std::vector<char> high(K, 0);
    bool seeded = false;
    for (int j = 2; j <= g; ++j) {
        for (int i = k; i < K; ++i) C[2 * j - 2][i] = gp - 1 - C[2 * j - 3][i];
        if (j == g) break;
        if (dp[j - 1] % 2 == 0) {
            for (int i = k; i < K; ++i) C[2 * j - 1][i] = gp - 2 - C[2 * j - 2][i];
            continue;
        }
        int hi = (dp[j - 1] - 1) / 2;
        for (int i = k; i < K; ++i) {
            // 1-based row i+1: even rows start low at the first odd node
            high[i] = seeded ? !high[i] : ((i + 1) % 2 == 1);
            C[2 * j - 1][i] = (high[i] ? hi : hi - 1) - C[2 * j - 2][i];
        }
        seeded = true;
    }
    for (int i = k; i < K; ++i)
        if (gp - 2 - C[2 * g - 2][i] != C[2 * g - 1][i])
            throw Error(ErrorCode::construction_bug, "new rows miss the terminal sequence");
    return pack(g, K, dp, C);
}

NewComponents first_components(int g, int k, int q) {
    const int k1 = k / 2, N = 4 * k1 + 6 - q, gp = g + N, bp = gp - 1;
    NewComponents nc{N, 2, gp, {}, {}};
    auto O = [&](int x) { return std::pair(x, bp - x); };
    auto O2 = [&](int x, int y) { return std::pair(x, bp - y); };
    auto add = [&](std::pair<int, int> s1, std::pair<int, int> s2, std::vector<int> tau = {}) {
        nc.bundles.push_back({s1.first, s1.second, s2.first, s2.second});
        nc.taus.push_back(std::move(tau));
    };
    add(O(g - k1), O(g + k1));
    add(O(g - k1), O(g + k1 + 2));
    add(O(g - k1 + 1), O(g + k1 + 3));
    add({g - k1 + 3, 5 * k1 - q + 3}, {g + k1 + 3, 3 * k1 - q + 2}, {k + 1, k + 4});
    add(O(g - k1 + 4), O(g + k1 + 3));
    add(O(g - k1 + 6), O(g + k1 + 3));
    add(O(g - k1 + 6), O(g + k1 + 5));
    add(O2(g - k1 + 5, g - k1 + 6), O(g + k1 + 8), k1 > 2 ? std::vector<int>{1, k} : std::vector<int>{1});
    add(O(g - k1 + 8), O(g + k1 + 8));
    for (int s = 0; s <= q - 2; ++s) {
        int L = g - k1 + 14 * s, Rt = g + k1 + 8 * s;
        add(O(L + 11), O2(Rt + 7, Rt + 6), {1});
        add(O(L + 11), O(Rt + 8));
        add(O(L + 12), O(Rt + 9));
        add(O(L + 14), O2(Rt + 9, Rt + 10), {5 + 6 * s, k, k + 1, k + 4});
        add(O(L + 16), O(Rt + 10));
        add(O(L + 15), O(Rt + 13));
        add(O(L + 19), O(Rt + 11));
        add(O(L + 20), O(Rt + 12));
        add(O(L + 19), O(Rt + 15));
        add(O(L + 21), O(Rt + 15));
        add(O(L + 22), O(Rt + 16));
    }
    for (int l = 0; l <= k1 - 3 * q; ++l) {
        int L = g - k1 + 14 * q + 5 * l, Rt = g + k1 + 8 * q + 3 * l;
        add(O(L - 3), O(Rt - 1));
        add(O(L - 2), O(Rt));
        add(O(L - 2), O(Rt + 2));
        add(O(L - 1), O(Rt + 3));
    }
    add({gp - 4, 3}, {gp - 4, 3});
    add({gp - 4, 3}, {gp - 2, 1});
    add({gp - 3, 2}, {gp - 1, 0});
    add({gp - 1, 0}, {gp - 1, 0});
    return nc;
}

NewComponents second_components(int g, int k) {
    const int k1 = k / 2, N = 2 * k1 + 2, gp = g + N;
    NewComponents nc{N, 1, gp, {}, {}};
    for (int t = 0; t < k1; ++t) {
        nc.bundles.push_back({g - k1 + 2 * t, 3 * k1 + 1 - 2 * t, g + k1, k1 + 1});
        nc.taus.emplace_back();
    }
    for (int t = 0; t <= k1; ++t) {
        nc.bundles.push_back({g - 1 + 2 * t, 2 * k1 + 2 - 2 * t, g + 2 * k1 + 1, 0});
        nc.taus.emplace_back();
    }
    nc.bundles.push_back({gp - 1, 0, gp - 1, 0});
    nc.taus.emplace_back();
    return nc;
}

NewComponents third_components(int g, int k) {
    const int k1 = k / 2, N = 3 * k1 + 3, gp = g + N, bp = gp - 1;
    NewComponents nc{N, 2, gp, {}, {}};
    auto O = [&](int x) { return std::pair(x, bp - x); };
    auto O2 = [&](int x, int y) { return std::pair(x, bp - y); };
    auto add = [&](std::pair<int, int> s1, std::pair<int, int> s2, std::vector<int> tau = {}) {
        nc.bundles.push_back({s1.first, s1.second, s2.first, s2.second});
        nc.taus.push_back(std::move(tau));
    };
    add(O(g - k1), O2(g + k1, g + k1 - 1), {1});
    add(O(g - k1 - 1), O(g + k1 + 2));
    add(O(g - k1 + 1), O(g + k1 + 2));
    add(O(g - k1 + 2), O(g + k1 + 3));
    add(O(g - k1 + 4), O2(g + k1 + 3, g + k1 + 4), {k + 1});
    for (int j = 1; j <= k1 - 1; ++j) add(O(g - k1 + 5 + 2 * j), O(g + k1 + 3));
    for (int s = 0; s <= k1 - 2; ++s) {
        add(O(g + 5 + 3 * s), O(g + 2 * k1 + 3 + s));
        add(O(g + 6 + 3 * s), O(g + 2 * k1 + 4 + s));
    }
    add({gp - 1, 0}, {gp - 1, 0});
    return nc;
}

ChainLedger construct_first(const ChainLedger& seed, int q) {
    require_odd_seed(seed);
    if (q < 1 || q > max_speed(seed.k))
        throw Error(ErrorCode::invalid_parameter, "q out of range 1.." + std::to_string(max_speed(seed.k)));
    auto nc = first_components(seed.g, seed.k, q);
    auto s = step1_extend(seed.table, {nc.N, nc.m});
    Move mv{MoveKind::first, q, seed.pair(), apply_move(seed.pair(), MoveKind::first, q)};
    return extend(seed, s, nc, mv);
}

ChainLedger construct_second(const ChainLedger& seed) {
    require_odd_seed(seed);
    auto nc = second_components(seed.g, seed.k);
    auto s = step1_extend(seed.table, {nc.N, nc.m});
    Move mv{MoveKind::second, 0, seed.pair(), apply_move(seed.pair(), MoveKind::second)};
    return extend(seed, s, nc, mv);
}

ChainLedger construct_third(const ChainLedger& seed) {
    require_odd_seed(seed);
    auto nc = third_components(seed.g, seed.k);
    auto s = step1_extend(seed.table, {nc.N, nc.m});
    const int K = seed.k + 3;
    s.k = K;
    for (auto& c : s.matrix) c.resize(K);
    s.right.resize(K);
    s.left = boundary_sequence(K);
    Move mv{MoveKind::third, 0, seed.pair(), apply_move(seed.pair(), MoveKind::third)};
    return extend(seed, s, nc, mv);
}

ChainLedger apply_construction(const ChainLedger& seed, MoveKind kind, int q) {
    switch (kind) {
        case MoveKind::first: return construct_first(seed, q);
        case MoveKind::second: return construct_second(seed);
        case MoveKind::third: return construct_third(seed);
    }
    throw Error(ErrorCode::invalid_parameter, "unknown move");
}

ChainLedger replay(const std::vector<Move>& moves) {
    auto l = base_case();
    for (auto& mv : moves) {
        if (mv.from != l.pair())
            throw Error(ErrorCode::invalid_parameter, "move starts at the wrong pair");
        l = apply_construction(l, mv.kind, mv.q);
        if (l.pair() != mv.to) throw Error(ErrorCode::construction_bug, "move lands at the wrong pair");
    }
    return l;
}

std::vector<Violation> check_ledger_bundles(const ChainLedger& l) {
    std::vector<Violation> v;
    if (static_cast<int>(l.bundles.size()) != l.g || static_cast<int>(l.taus.size()) != l.g) {
        v.push_back({"ledger-size", 0, 0, ""});
        return v;
    }
    for (int j = 1; j <= l.g; ++j) {
        const auto& e = l.bundles[j - 1];
        try {
            auto got = infer_bundle(l.table.a_of(j), l.table.b_of(j), l.table.d[j - 1]);
            if (!got.same_as(e)) v.push_back({"bundle-mismatch", 0, j, got.str() + " vs " + e.str()});
            bool unst = e.stability() == Stability::unstable;
            if (unst != l.taus[j - 1].has_value()) v.push_back({"tau-presence", 0, j, ""});
            if (unst && l.taus[j - 1]) {
                ConciseTriple t{e, l.table.a_of(j), *l.taus[j - 1]};
                if (decode_concise(t, (e.degree() - 1) / 2) != l.table.b_of(j))
                    v.push_back({"tau-decode", 0, j, ""});
            }
        } catch (const Error& err) {
            v.push_back({"bundle-infeasible", 0, j, err.what()});
        }
    }
    return v;
}

int GoldenReport::matched() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](auto& e) { return e.status == GoldenEntry::Status::match; }));
}
int GoldenReport::mismatched() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](auto& e) { return e.status == GoldenEntry::Status::mismatch; }));
}
int GoldenReport::skipped() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](auto& e) { return e.status == GoldenEntry::Status::skipped; }));
}

GoldenReport verify_construction_tables(const ChainLedger& l) {
    GoldenReport rep;
    if (l.provenance.empty()) {
        skipped(rep, "all", "base ledger carries no golden sequences");
        return rep;
    }
    const auto& mv = l.provenance.back();
    const int g = mv.from.g, k1 = mv.from.k / 2, q = mv.q;
    if (mv.kind == MoveKind::second) {
        Col s{3 * k1 + 2};
        for (int x = 3 * k1 + 1; x >= 2 * k1 + 2; --x) s.insert(s.end(), {x, x});
        s.insert(s.end(), {k1 + 1, k1});
        std::vector<Tok> toks;
        for (int x : s) toks.push_back(S(x));
        golden(rep, l, "second 2g-1", 2 * g - 1, toks);
        return rep;
    }
    if (mv.kind == MoveKind::third) {
        golden(rep, l, "third 2g+1", 2 * g + 1,
               {S(4 * k1 + 3), D(4 * k1 + 2), S(4 * k1 + 1), R(4 * k1, 3 * k1 + 3), S(3 * k1 + 2),
                S(2 * k1 + 3), S(2 * k1 + 1), S(2 * k1)});
        golden(rep, l, "third 2g+7", 2 * g + 7,
               {S(4 * k1 + 1), D(4 * k1), S(4 * k1 - 2), R(4 * k1 - 3, 3 * k1), S(3 * k1 - 1), S(2 * k1),
                D(2 * k1 - 1)});
        if (k1 >= 3) {
            golden(rep, l, "third 2g+9", 2 * g + 9,
                   {D(4 * k1 - 1), D(4 * k1 - 2), S(4 * k1 - 4), R(4 * k1 - 5, 3 * k1 - 1), S(3 * k1 - 2),
                    S(3 * k1 - 3), S(2 * k1 - 1), D(2 * k1 - 2)});
            golden(rep, l, "third 2g+2k1+3", 2 * g + 2 * k1 + 3,
                   {D(3 * k1 + 2), D(3 * k1 + 1), R(3 * k1 - 1, 2 * k1 + 3), S(2 * k1 + 2), S(2 * k1 + 1),
                    S(2 * k1), S(2 * k1 - 1), D(k1 + 1)});
        } else {
            skipped(rep, "third 2g+9", "needs k1 >= 3");
            skipped(rep, "third 2g+2k1+3", "needs k1 >= 3");
        }
        return rep;
    }

    golden(rep, l, "first-head 2g+5", 2 * g + 5,
           {D(5 * k1 + 4 - q), S(5 * k1 + 2 - q), R(5 * k1 + 1 - q, 4 * k1 + 3 - q, 2 * k1 - 2), S(3 * k1 + 3 - q),
            D(3 * k1 + 2 - q), S(3 * k1 - q)});
    golden(rep, l, "first-head 2g+7", 2 * g + 7,
           {S(5 * k1 + 4 - q), D(5 * k1 + 3 - q), S(5 * k1 + 1 - q), R(5 * k1 - q, 4 * k1 + 3 - q, 2 * k1 - 4),
            S(4 * k1 + 2 - q), S(3 * k1 + 3 - q), D(3 * k1 + 2 - q), S(3 * k1 - q)});
    if (k1 == 2) {
        // 5k1-3-q, 4k1-1-q and 3k1+1-q coincide; the value appears once
        golden(rep, l, "first-head 2g+13", 2 * g + 13,
               {S(5 * k1 + 1 - q), D(5 * k1 - q), D(5 * k1 - 1 - q), S(5 * k1 - 3 - q), D(3 * k1 - q),
                S(3 * k1 - 3 - q)});
    } else {
        golden(rep, l, "first-head 2g+13", 2 * g + 13,
               {S(5 * k1 + 1 - q), D(5 * k1 - q), D(5 * k1 - 1 - q), S(5 * k1 - 3 - q),
                R(5 * k1 - 4 - q, 4 * k1 - q, 2 * k1 - 6), S(4 * k1 - 1 - q), S(3 * k1 + 1 - q), D(3 * k1 - q),
                S(3 * k1 - 3 - q)});
    }
    golden(rep, l, "first-head 2g+15", 2 * g + 15,
           {S(5 * k1 - q), D(5 * k1 - 1 - q), S(5 * k1 - 2 - q), S(5 * k1 - 3 - q),
            R(5 * k1 - 5 - q, 4 * k1 - 2 - q, 2 * k1 - 4), D(3 * k1 - 1 - q), S(3 * k1 - 2 - q), S(3 * k1 - 3 - q)});
    golden(rep, l, "first-head 2g+17", 2 * g + 17,
           {S(5 * k1 - 1 - q), D(5 * k1 - 2 - q), D(5 * k1 - 3 - q), R(5 * k1 - 6 - q, 4 * k1 - 3 - q, 2 * k1 - 4),
            D(3 * k1 - 2 - q), D(3 * k1 - 3 - q)});

    for (int s = 0; s <= q - 1; ++s) {
        std::string tag = " s=" + std::to_string(s);
        golden(rep, l, "first-s-block 2g+17+22s" + tag, 2 * g + 17 + 22 * s,
               {S(5 * k1 - 1 - q - 11 * s), R(5 * k1 - 2 - q - 11 * s, 5 * k1 - 3 - q - 14 * s, 4 + 6 * s),
                R(5 * k1 - 6 - q - 14 * s, 4 * k1 - 3 - q - 11 * s, 2 * k1 - 4 - 6 * s), D(3 * k1 - 2 - q - 8 * s),
                D(3 * k1 - 3 - q - 8 * s)});
        if (s > q - 2) {
            skipped(rep, "first-s-block 2g+19+22s" + tag, "last s-block is followed by the l-blocks");
            skipped(rep, "first-s-block 2g+25+22s" + tag, "last s-block is followed by the l-blocks");
            continue;
        }
        golden(rep, l, "first-s-block 2g+19+22s" + tag, 2 * g + 19 + 22 * s,
               {S(5 * k1 - 1 - q - 11 * s), S(5 * k1 - 2 - q - 11 * s),
                R(5 * k1 - 3 - q - 11 * s, 5 * k1 - 3 - q - 14 * s, 2 + 6 * s), S(5 * k1 - 4 - q - 14 * s),
                D(5 * k1 - 6 - q - 14 * s), S(5 * k1 - 7 - q - 14 * s),
                R(5 * k1 - 8 - q - 14 * s, 4 * k1 - 3 - q - 11 * s, 2 * k1 - 8 - 6 * s), S(4 * k1 - 4 - q - 11 * s),
                S(3 * k1 - 1 - q - 8 * s), D(3 * k1 - 3 - q - 8 * s), S(3 * k1 - 4 - q - 8 * s)});
        golden(rep, l, "first-s-block 2g+25+22s" + tag, 2 * g + 25 + 22 * s,
               {S(5 * k1 - 5 - q - 11 * s), R(5 * k1 - 6 - q - 11 * s, 5 * k1 - 7 - q - 14 * s, 4 + 6 * s),
                S(5 * k1 - 8 - q - 14 * s), D(5 * k1 - 9 - q - 14 * s), S(5 * k1 - 11 - q - 14 * s),
                R(5 * k1 - 12 - q - 14 * s, 4 * k1 - 7 - q - 11 * s, 2 * k1 - 8 - 6 * s), S(3 * k1 - 4 - q - 8 * s),
                D(3 * k1 - 5 - q - 8 * s), S(3 * k1 - 7 - q - 8 * s)});
    }
    const int h = g + 11 * q - 2;
    for (int ll = 0; ll <= k1 - 3 * q + 1; ++ll) {
        golden(rep, l, "first-l-block l=" + std::to_string(ll), 2 * h + 8 * ll - 1,
               {S(5 * k1 - 12 * q - 4 * ll + 10),
                R(5 * k1 - 12 * q - 4 * ll + 9, 5 * k1 - 15 * q - 5 * ll + 11, 6 * q + 2 * ll - 2),
                R(5 * k1 - 15 * q - 5 * ll + 8, 4 * k1 - 12 * q - 4 * ll + 8, 2 * k1 - 6 * q - 2 * ll + 2),
                D(3 * k1 - 9 * q + 6 - 3 * ll), D(3 * k1 - 9 * q + 5 - 3 * ll)});
    }
    return rep;
}

std::vector<Violation> verify_step1(const VanishingTable& seed, const StepParams& p,
                                    const VanishingTable& out) {
    std::vector<Violation> v;
    const int g = seed.g, k = seed.k, k1 = k / 2, N = p.N, m = p.m, n = 2 * m, K = k + n;
    if (out.g != g || out.k != K) {
        v.push_back({"shape", 0, 0, "output has wrong size"});
        return v;
    }
    std::vector<int> dp;
    for (int x : seed.d) dp.push_back(x + 2 * N);
    if (out.d != dp) v.push_back({"degrees", 0, 0, "d' != d + 2N"});
    if (out.col(0) != boundary_sequence(K)) v.push_back({"left-boundary", 0, 0, ""});
    if (out.col(2 * g - 1) != terminal_sequence(N, k1, m)) v.push_back({"right-boundary", 0, 0, ""});

    // condition 1: old rows shifted on odd columns
    for (int c = 1; c <= 2 * g - 2; ++c)
        for (int i = 0; i < k; ++i)
            if (out.col(c)[i] != seed.col(c)[i] + (c % 2 ? N : 0)) v.push_back({"am1-c1", i + 1, c, ""});
    // condition 2
    for (int j = 1; j <= g - 1; ++j)
        for (int i = 0; i < K; ++i)
            if (out.col(2 * j - 1)[i] + out.col(2 * j)[i] != g + N - 1) v.push_back({"am1-c2", i + 1, j, ""});
    // conditions 3, 4: feasibility type is preserved
    for (int j = 1; j <= g; ++j) {
        if (seed.d[j - 1] % 2 == 0) {
            bool before = check_semistable_basis(seed.a_of(j), seed.b_of(j), seed.d[j - 1] / 2).ok();
            auto after = check_semistable_basis(out.a_of(j), out.b_of(j), dp[j - 1] / 2);
            if (before && !after.ok()) v.push_back({"am1-c3", 0, j, format_violations(after.violations)});
        } else {
            bool before = check_unstable_basis(seed.a_of(j), seed.b_of(j), (seed.d[j - 1] - 1) / 2).ok();
            auto after = check_unstable_basis(out.a_of(j), out.b_of(j), (dp[j - 1] - 1) / 2);
            if (before && !after.ok()) v.push_back({"am1-c4", 0, j, format_violations(after.violations)});
        }
    }
    // condition 5: new rows alternate sum type across odd nodes
    auto odd = odd_nodes(seed.d);
    for (int i = k; i < K; ++i) {
        for (std::size_t t = 0; t < odd.size(); ++t) {
            int j = odd[t], hi = (dp[j - 1] - 1) / 2;
            int s = out.a_of(j)[i] + out.b_of(j)[i];
            if (s != hi && s != hi - 1) v.push_back({"am1-c5-range", i + 1, j, ""});
            if (t + 1 < odd.size()) {
                int j2 = odd[t + 1], hi2 = (dp[j2 - 1] - 1) / 2;
                int s2 = out.a_of(j2)[i] + out.b_of(j2)[i];
                if ((s == hi && s2 != hi2 - 1) || (s == hi - 1 && s2 != hi2)) v.push_back({"am1-c5", i + 1, j2, ""});
            }
        }
    }
    // condition 6
    if (g >= 2 && out.col(2)[K - 1] + out.col(3)[K - 1] != (dp[1] - 1) / 2) v.push_back({"am1-c6", K, 2, ""});

    auto segment = [&](int c) { return Col(out.col(c).begin() + k, out.col(c).end()); };
    // block shapes at odd nodes
    for (std::size_t t = 0; t < odd.size(); ++t) {
        int j = odd[t];
        bool t_odd = (t + 1) % 2 == 1;
        auto a = segment(2 * j - 2), b = segment(2 * j - 1);
        Col wa = t_odd ? step_up(a[0], m) : pairs_up(a[0], m);
        Col wb = t_odd ? negate_shape(pairs_up(b[0], m), b[0]) : negate_shape(step_up(b[0], m), b[0]);
        if (a != wa) v.push_back({"shape-a-odd-node", 0, j, ""});
        if (b != wb) v.push_back({"shape-b-odd-node", 0, j, ""});
    }
    // block shapes elsewhere, by parity of the number of odd nodes to the left
    for (int j = 1; j <= g; ++j) {
        if (std::find(odd.begin(), odd.end(), j) != odd.end()) continue;
        int before = static_cast<int>(std::count_if(odd.begin(), odd.end(), [&](int x) { return x < j; }));
        auto a = segment(2 * j - 2), b = segment(2 * j - 1);
        Col wa = before % 2 == 0 ? step_up(a[0], m) : pairs_up(a[0], m);
        Col wb = before % 2 == 0 ? negate_shape(step_up(b[0], m), b[0]) : negate_shape(pairs_up(b[0], m), b[0]);
        if (a != wa) v.push_back({"shape-a", 0, j, ""});
        if (b != wb) v.push_back({"shape-b", 0, j, ""});
    }
    // monotonicity and sign
    for (int c = 0; c < 2 * g; ++c) {
        const auto& x = out.col(c);
        for (int i = 0; i + 1 < K; ++i) {
            if (c % 2 == 1 && x[i] < x[i + 1]) v.push_back({"monotone", i + 1, c, "odd column increases"});
            if (c % 2 == 0 && x[i] > x[i + 1]) v.push_back({"monotone", i + 1, c, "even column decreases"});
        }
        for (int i = 0; i < K; ++i)
            if (x[i] < 0) v.push_back({"negative", i + 1, c, ""});
    }
    return v;
}

nlohmann::json ledger_to_json(const ChainLedger& l) {
    auto bundles = nlohmann::json::array();
    for (int j = 0; j < l.g; ++j) {
        const auto& e = l.bundles[j];
        nlohmann::json b{{"l1", e.l1}, {"r1", e.r1}, {"l2", e.l2}, {"r2", e.r2},
                         {"stability", stability_name(e.stability())}};
        b["tau"] = l.taus[j] ? nlohmann::json(*l.taus[j]) : nlohmann::json(nullptr);
        bundles.push_back(b);
    }
    auto prov = nlohmann::json::array();
    for (auto& mv : l.provenance)
        prov.push_back({{"move", move_name(mv.kind)}, {"q", mv.q},
                        {"from", {mv.from.g, mv.from.k}}, {"to", {mv.to.g, mv.to.k}}});
    auto t = table_to_json(l.table);
    return {{"g", l.g}, {"k", l.k}, {"d_vec", l.table.d}, {"bundles", bundles},
            {"matrix", t["matrix"]}, {"boundaries", t["boundaries"]}, {"provenance", prov}};
}

ChainLedger ledger_from_json(const nlohmann::json& j) {
    try {
        ChainLedger l;
        l.table = table_from_json(j);
        l.g = l.table.g;
        l.k = l.table.k;
        for (auto& b : j.at("bundles")) {
            BundleSpec e{b.at("l1").get<int>(), b.at("r1").get<int>(), b.at("l2").get<int>(), b.at("r2").get<int>()};
            if (b.contains("stability") && parse_stability(b["stability"].get<std::string>()) != e.stability())
                throw Error(ErrorCode::parse_error, "stability field disagrees with twists for " + e.str());
            l.bundles.push_back(e);
            if (b.contains("tau") && !b["tau"].is_null()) l.taus.push_back(b["tau"].get<std::vector<int>>());
            else l.taus.push_back(std::nullopt);
        }
        if (j.contains("provenance")) {
            for (auto& p : j["provenance"]) {
                Move mv;
                auto name = p.at("move").get<std::string>();
                if (name == "first") mv.kind = MoveKind::first;
                else if (name == "second") mv.kind = MoveKind::second;
                else if (name == "third") mv.kind = MoveKind::third;
                else throw Error(ErrorCode::parse_error, "unknown move '" + name + "'");
                mv.q = p.value("q", 0);
                auto f = p.at("from").get<std::vector<int>>();
                auto t = p.at("to").get<std::vector<int>>();
                if (f.size() != 2 || t.size() != 2) throw Error(ErrorCode::parse_error, "bad move endpoints");
                mv.from = {f[0], f[1]};
                mv.to = {t[0], t[1]};
                l.provenance.push_back(mv);
            }
        }
        return l;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

}  // namespace bnchain
