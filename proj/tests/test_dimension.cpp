// SPDX-License-Identifier: Apache-2.0
#include "bnchain/dimension.hpp"
#include "bnchain/error.hpp"
#include "doctest.h"

using namespace bnchain;
using V = std::vector<int>;

namespace {
// (41,13): the first seed with speed 2
ChainLedger seed_41_13() {
    auto s = construct_first(base_case(), 1);
    return construct_second(construct_second(s));
}

std::vector<ChainLedger> ledgers_up_to(int kmax) {
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
}  // namespace

TEST_CASE("base ledger accounts to zero") {
    auto r = account_dimension(base_case());
    CHECK(r.total == 0);
    CHECK(r.rho == 0);
    CHECK(r.ok());
    REQUIRE(r.entries.size() == 6);
    CHECK(r.entries[0].rule == "base");
    CHECK(r.entries[0].bound == -2);
    V tail;
    for (int j = 1; j < 6; ++j) tail.push_back(r.entries[j].bound);
    CHECK(tail == V{0, 2, 0, 0, 0});
    CHECK(r.entries[5].rule == "double");
}

TEST_CASE("partition helpers") {
    CHECK(nonrepeated({0, 0, 1, 1, 2}) == std::set<int>{4});
    CHECK(nonrepeated({5, 3, 3, 1}) == std::set<int>{0, 3});
    ConfigurationPartition c{1, {{0}, {2}, {4}}};
    auto m = merge_blocks(c, {0, 4});
    CHECK(same_partition(m, {1, {{2}, {0, 4}}}));
    CHECK_FALSE(same_partition(m, c));
}

TEST_CASE("bound calculators") {
    CHECK(m_bound_double({5, 0, 5, 0}) == 0);
    CHECK(m_bound_double({0, 3, 0, 3}) == 0);
    CHECK_THROWS_AS(m_bound_double({1, 4, 4, 1}), Error);
    CHECK_THROWS_AS(m_bound_unstable({1, 4, 4, 1}, {0}, {5}), Error);

    // no blocks at all
    ConfigurationPartition empty{4, {}};
    CHECK(m_bound_semistable({1, 4, 4, 1}, empty, {0, 1, 2, 3, 4}, {4, 4, 2, 1, 1}) == 2);
    CHECK_THROWS_AS(m_bound_semistable({0, 5, 0, 5}, empty, {0, 0, 1, 1, 2}, {5, 5, 3, 3, 2}), Error);

    auto b = base_case();
    auto f = construct_first(b, 1);
    auto u = m_bound_unstable_detail(f.bundles[b.g + 4 - 1], f.table.a_of(b.g + 4), f.table.b_of(b.g + 4));
    CHECK(u.eps == 1);
    CHECK(u.M == V{b.k});
    CHECK(u.bound == 1);
    CHECK(m_bound_double(f.bundles[f.g - 1]) == 0);

    auto s = seed_41_13();
    auto l = construct_first(s, 2);
    int j = s.g + 10;
    auto w = m_bound_unstable_detail(l.bundles[j - 1], l.table.a_of(j), l.table.b_of(j));
    CHECK(w.eps == 1);
    CHECK(w.M == V{5, s.k, s.k + 4});
    CHECK(w.bound == 3);
}

TEST_CASE("configuration propagation") {
    auto a = V{0, 0, 1, 1, 2};
    auto b = V{5, 5, 3, 3, 2};
    // double: the partition moves over as a whole, less the rows repeated on the right
    ConfigurationPartition c{1, {{4}}};
    CHECK(same_partition(propagate_configuration({0, 5, 0, 5}, c, a, b), {2, {{4}}}));
    ConfigurationPartition c2{1, {{0, 4}, {2}}};
    CHECK(same_partition(propagate_configuration({0, 5, 0, 5}, c2, a, b), {2, {{4}}}));
    // every right non-repeated row lands in exactly one block
    auto base = base_case();
    for (int j = 1; j <= base.g; ++j) {
        ConfigurationPartition in{j, {}};
        for (int i : nonrepeated(base.table.a_of(j))) in.blocks.push_back({i});
        auto out = propagate_configuration(base.bundles[j - 1], in, base.table.a_of(j), base.table.b_of(j));
        std::set<int> seen;
        std::size_t n = 0;
        for (auto& blk : out.blocks) {
            seen.insert(blk.begin(), blk.end());
            n += blk.size();
        }
        CHECK(seen == nonrepeated(base.table.b_of(j)));
        CHECK(n == seen.size());
    }
}

TEST_CASE("first construction from the base case") {
    auto b = base_case();
    auto f = construct_first(b, 1);
    auto acc = account_move(f, f.provenance.back());
    CHECK(acc.step1 == 1);
    CHECK(acc.total == 9 - 0);
    bool head = false, tail = false;
    for (auto& blk : acc.blocks) {
        if (blk.name.rfind("head", 0) == 0) {
            CHECK(blk.sum == 6);
            head = true;
        }
        if (blk.name == "tail") {
            CHECK(blk.sum == 2);
            tail = true;
        }
    }
    CHECK(head);
    CHECK(tail);
    auto r = account_dimension(f);
    CHECK(r.total == 9);
    CHECK(r.ok());
}

TEST_CASE("second construction from the base case") {
    auto l = construct_second(base_case());
    auto acc = account_move(l, l.provenance.back());
    CHECK(acc.step1 == 1);
    CHECK(acc.total == 5);
    CHECK(account_dimension(l).total == 5);
}

TEST_CASE("per-node bounds are the listed ones and block totals hold on chains up to k=21") {
    for (auto& l : ledgers_up_to(21)) {
        INFO("(g,k)=(" << l.g << "," << l.k << ")");
        auto r = account_dimension(l);
        CHECK(r.total == rho(l.pair()));
        CHECK(r.ok());
        if (l.provenance.empty()) continue;
        auto mv = l.provenance.back();
        auto acc = account_move(l, mv);
        auto exp = expected_node_bounds(mv.kind, mv.from.g, mv.from.k, mv.q);
        auto corr = correction_table(mv.kind, mv.from.g, mv.from.k, mv.q);
        int ncorr = 0;
        for (auto& [j, c] : corr) ncorr += c;
        int seen = 0;
        for (auto& e : acc.entries) {
            if (e.rule == "step1") continue;
            REQUIRE(exp.count(e.j));
            CHECK(e.bound == exp[e.j]);
            seen += e.correction;
        }
        CHECK(seen == ncorr);
        CHECK(acc.total == rho(mv.to) - rho(mv.from));
        int k1 = mv.from.k / 2;
        for (auto& blk : acc.blocks) {
            if (blk.name.rfind("head", 0) == 0) CHECK(blk.sum == 6);
            if (blk.name.rfind("s-block", 0) == 0) CHECK(blk.sum == 9);
            if (mv.kind == MoveKind::third) CHECK(blk.sum == 3 * k1);
            if (mv.kind == MoveKind::second) CHECK(blk.sum == mv.to.g - mv.from.g - 2);
            CHECK(blk.correction == -blk.engine_merges);
        }
    }
}

TEST_CASE("speed-2 move has an s-block of total 9") {
    auto s = seed_41_13();
    auto l = construct_first(s, 2);
    auto acc = account_move(l, l.provenance.back());
    int sblocks = 0;
    for (auto& blk : acc.blocks)
        if (blk.name.rfind("s-block", 0) == 0) {
            ++sblocks;
            CHECK(blk.sum == 9);
        }
    CHECK(sblocks == 1);
    CHECK(account_dimension(l).total == rho(l.pair()));
}

TEST_CASE("accounting refuses a ledger whose table does not match its provenance") {
    auto l = construct_second(base_case());
    auto broken = l;
    broken.provenance.back().from.g += 1;
    CHECK_THROWS_AS(account_dimension(broken), Error);
    auto edited = l;
    edited.table.col(3)[0] += 1;
    CHECK_THROWS_AS(account_dimension(edited), Error);
}

TEST_CASE("fiber report JSON") {
    auto j = fiber_report_to_json(account_dimension(construct_third(base_case())));
    CHECK(j["total"] == 6);
    CHECK(j["rho"] == 6);
    CHECK(j["ok"] == true);
}
