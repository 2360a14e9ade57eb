// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <deque>

#include "bnchain/constructions.hpp"
#include "bnchain/error.hpp"
#include "bnchain/vanishing.hpp"
#include "doctest.h"

using namespace bnchain;
using V = std::vector<int>;

TEST_CASE("common lower bound") {
    CHECK(common_lower_bound({0, 0, 2, 2, 3}, {5, 5, 4, 2, 2}, 1) == 2);
    CHECK(common_lower_bound({0}, {0}, 1) == 1);
    CHECK(common_lower_bound({1, 1, 3, 4, 4}, {3, 2, 2, 0, 0}, 3) == 1);
}

TEST_CASE("semistable feasibility") {
    auto r = check_semistable_basis({0, 0, 1, 1, 2}, {5, 5, 3, 3, 2}, 5);
    CHECK(r.ok());
    CHECK(r.i1 == 1);
    CHECK(r.i2 == 2);
    auto s = check_semistable_basis({0, 2, 3}, {5, 3, 1}, 5);
    CHECK(s.ok());
    CHECK(s.i1 == 1);
    CHECK(s.i2 == 2);
    CHECK_FALSE(check_semistable_basis({0}, {5}, 5).ok());
}

TEST_CASE("unstable feasibility") {
    auto r = check_unstable_basis({0, 0, 2, 2, 3}, {5, 5, 4, 2, 2}, 5);
    REQUIRE(r.ok());
    CHECK(r.ell == 3);
    CHECK(r.istar == 1);
    CHECK(r.tau == V{5});
    auto s = check_unstable_basis({1, 1, 3, 4, 4}, {3, 2, 2, 0, 0}, 4);
    REQUIRE(s.ok());
    CHECK(s.ell == 3);
    CHECK(s.istar == 4);
    CHECK(s.tau.empty());
    CHECK_FALSE(check_unstable_basis({0, 1}, {5, 4}, 5).ok());
}

TEST_CASE("bundle inference") {
    auto e1 = infer_bundle({0, 0, 1, 1, 2}, {5, 5, 3, 3, 2}, 10);
    CHECK(e1.same_as({0, 5, 0, 5}));
    CHECK(e1.stability() == Stability::dbl);
    auto e2 = infer_bundle({0, 0, 2, 2, 3}, {5, 5, 4, 2, 2}, 11);
    CHECK(e2.same_as({2, 4, 0, 5}));
    CHECK(e2.stability() == Stability::unstable);
    auto e5 = infer_bundle({1, 1, 3, 4, 4}, {3, 2, 2, 0, 0}, 9);
    CHECK(e5.same_as({3, 2, 4, 0}));
    CHECK(e5.stability() == Stability::unstable);
    CHECK_THROWS_AS(infer_bundle({0, 0, 1, 1, 2}, {5, 5, 3, 3, 2}, 4), Error);
}

TEST_CASE("bundle classes") {
    CHECK(BundleSpec{0, 5, 0, 5}.stability() == Stability::dbl);
    CHECK(BundleSpec{1, 4, 4, 1}.stability() == Stability::semistable);
    CHECK(BundleSpec{3, 2, 4, 0}.stability() == Stability::unstable);
    CHECK_THROWS_AS((BundleSpec{0, 0, 4, 0}.stability()), Error);
}

TEST_CASE("concise decoding") {
    CHECK(decode_concise({{2, 4, 0, 5}, {0, 0, 2, 2, 3}, {5}}, 5) == V{5, 5, 4, 2, 2});
    CHECK(decode_concise({{3, 2, 4, 0}, {1, 1, 3, 4, 4}, {}}, 4) == V{3, 2, 2, 0, 0});
    CHECK(decode_concise({{0, 7, 1, 6}, {0, 1}, {}}, 7) == V{7, 6});
}

TEST_CASE("base table standardness and perturbation") {
    auto b = base_case();
    CHECK(check_standard(b.table).ok());
    auto t = b.table;
    t.col(2)[0] += 1;
    auto rep = check_standard(t);
    CHECK_FALSE(rep.ok());
    bool comp = std::any_of(rep.violations.begin(), rep.violations.end(),
                            [](auto& v) { return v.code.find("compl") != std::string::npos; });
    CHECK(comp);
}

namespace {
std::vector<ChainLedger> sample_ledgers() {
    std::vector<ChainLedger> out{base_case()};
    auto b = base_case();
    out.push_back(construct_first(b, 1));
    out.push_back(construct_second(b));
    out.push_back(construct_third(b));
    auto s = construct_second(b);
    out.push_back(construct_first(s, 1));
    out.push_back(construct_third(s));
    out.push_back(construct_first(construct_first(b, 1), 1));
    return out;
}
}  // namespace

TEST_CASE("encode then decode is the identity on generated columns") {
    for (auto& l : sample_ledgers()) {
        for (int j = 1; j <= l.g; ++j) {
            const auto& a = l.table.a_of(j);
            const auto& b = l.table.b_of(j);
            int deg = l.table.d[j - 1];
            auto t = encode_concise(a, b, deg);
            CHECK(decode_concise(t, deg / 2) == b);
        }
    }
}

TEST_CASE("standard tables: every column pair infers a bundle and degrees sum to 2g(g-1)") {
    for (auto& l : sample_ledgers()) {
        long long sum = 0;
        for (int x : l.table.d) sum += x;
        CHECK(sum == 2LL * l.g * (l.g - 1));
        for (int j = 1; j <= l.g; ++j) {
            CHECK_NOTHROW(infer_bundle(l.table.a_of(j), l.table.b_of(j), l.table.d[j - 1]));
            int deg = l.table.d[j - 1];
            bool one = check_semistable_basis(l.table.a_of(j), l.table.b_of(j), deg / 2).ok();
            bool two = check_unstable_basis(l.table.a_of(j), l.table.b_of(j), (deg - 1) / 2).ok();
            CHECK(one != two);
            CHECK(one == (deg % 2 == 0));
        }
    }
}

TEST_CASE("table CSV and JSON round trips") {
    for (auto& l : sample_ledgers()) {
        auto csv = table_to_csv(l.table);
        CHECK(table_from_csv(csv, l.table.d) == l.table);
        CHECK(table_from_json(table_to_json(l.table)) == l.table);
        CHECK(table_from_json(nlohmann::json::parse(table_to_json(l.table).dump())) == l.table);
    }
}

TEST_CASE("violation reports list every failure") {
    auto t = base_case().table;
    t.col(1)[0] = -3;
    t.col(3)[1] = 9;
    auto rep = check_standard(t);
    CHECK(rep.violations.size() >= 2);
}
