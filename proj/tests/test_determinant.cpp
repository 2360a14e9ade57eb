// SPDX-License-Identifier: Apache-2.0
#include "bnchain/constructions.hpp"
#include "bnchain/determinant.hpp"
#include "doctest.h"

using namespace bnchain;

namespace {
const std::vector<int> kBaseD{10, 11, 10, 10, 9, 10};

// det of O(l1,r1)+O(l2,r2) is (l1+l2, r1+r2); the canonical one on C_j is
// (2j-2, 2g-2j) shifted by one at the ends of an odd block
DetTarget naive_target(int j, const std::vector<int>& d) {
    int g = static_cast<int>(d.size());
    std::vector<int> odd;
    for (int t = 1; t <= g; ++t)
        if (d[t - 1] % 2) odd.push_back(t);
    DetTarget t{2 * j - 2, 2 * g - 2 * j};
    for (std::size_t s = 0; s + 1 < odd.size(); s += 2) {
        if (j > odd[s] && j <= odd[s + 1]) t.left -= 1;
        if (j >= odd[s] && j < odd[s + 1]) t.right += 1;
    }
    return t;
}
}  // namespace

TEST_CASE("odd blocks of the base degrees") {
    auto b = odd_blocks(kBaseD);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == std::pair<int, int>{2, 5});
}

TEST_CASE("canonical targets on the base chain") {
    auto b = odd_blocks(kBaseD);
    CHECK(canonical_det_target(1, kBaseD, b) == DetTarget{0, 10});
    CHECK(canonical_det_target(2, kBaseD, b) == DetTarget{2, 9});
    CHECK(canonical_det_target(4, kBaseD, b) == DetTarget{5, 5});
    for (int j = 1; j <= 6; ++j) CHECK(canonical_det_target(j, kBaseD, b).left + canonical_det_target(j, kBaseD, b).right == kBaseD[j - 1]);
}

TEST_CASE("canonical chain check on the base ledger and a perturbation") {
    auto l = base_case();
    CHECK(check_canonical_chain(l.bundles, l.table.d).ok());
    auto bad = l.bundles;
    bad[2].l1 += 1;
    bad[2].r1 -= 1;
    auto rep = check_canonical_chain(bad, l.table.d);
    CHECK_FALSE(rep.ok());
    CHECK(rep.failing() == std::vector<int>{3});
}

TEST_CASE("canonical targets match an independent evaluation on generated ledgers") {
    auto b = base_case();
    std::vector<ChainLedger> ls{b, construct_first(b, 1), construct_second(b), construct_third(b),
                                construct_first(construct_second(b), 1)};
    for (auto& l : ls) {
        auto blocks = odd_blocks(l.table.d);
        for (int j = 1; j <= l.g; ++j) {
            auto t = canonical_det_target(j, l.table.d, blocks);
            CHECK(t == naive_target(j, l.table.d));
            CHECK(t.left + t.right == l.table.d[j - 1]);
        }
        CHECK(check_canonical_chain(l.bundles, l.table.d).ok());
    }
}

TEST_CASE("fixed determinant targets") {
    std::vector<int> d{3, 1};
    std::vector<int> w{2, 2};
    CHECK(fixed_det_target(1, d, w) == DetTarget{0, 1});
    CHECK(fixed_det_target(2, d, w) == DetTarget{-1, 0});
    CHECK(fixed_det_target(1, d, d) == DetTarget{0, 0});
    CHECK(fixed_det_target(2, d, d) == DetTarget{0, 0});
}

TEST_CASE("fixed determinant targets telescope across nodes") {
    std::vector<std::vector<int>> ds{{10, 11, 10, 10, 9, 10}, {3, 1, 4, 7}, {5, 5, 5}};
    std::vector<std::vector<int>> ws{{10, 10, 10, 10, 10, 10}, {2, 3, 5, 5}, {4, 6, 5}};
    for (std::size_t c = 0; c < ds.size(); ++c) {
        int g = static_cast<int>(ds[c].size());
        for (int j = 1; j < g; ++j)
            CHECK(fixed_det_target(j + 1, ds[c], ws[c]).left == -fixed_det_target(j, ds[c], ws[c]).right);
        for (int j = 1; j <= g; ++j) {
            auto t = fixed_det_target(j, ds[c], ws[c]);
            CHECK(t.left + t.right == ds[c][j - 1] - ws[c][j - 1]);
        }
    }
}

TEST_CASE("determinant report JSON") {
    auto l = base_case();
    auto j = det_report_to_json(check_canonical_chain(l.bundles, l.table.d));
    CHECK(j.dump().find("pass") != std::string::npos);
}
