// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "bnchain/error.hpp"
#include "bnchain/lstab.hpp"
#include "doctest.h"

using namespace bnchain;

namespace {

// plain enumeration: every break mask, every per-component choice, no pruning
bool naive_semistable(const LChain& c) {
    const int n = c.n();
    std::vector<std::vector<int>> opts(n);  // 0 non-maximal, else the maximal line
    for (int j = 0; j < n; ++j) {
        const auto& e = c.comps[j];
        opts[j] = {0};
        if (e.dbl) opts[j].push_back(1);
        else if (e.x1 < e.x2) opts[j].push_back(2);
        else opts[j].insert(opts[j].end(), {1, 2});
    }
    for (int brk = 0; brk < (1 << (n - 1)); ++brk) {
        int m = 1 + __builtin_popcount(brk);
        std::vector<int> idx(n, 0);
        for (;;) {
            bool ok = true;
            long long twice = 0;
            for (int j = 0; j < n && ok; ++j) {
                int l = opts[j][idx[j]];
                const auto& e = c.comps[j];
                twice += 2 * (l ? e.x2 : (e.x1 < e.x2 ? e.x1 : e.x1 - 1));
                if (j == 0 || (brk >> (j - 1) & 1)) continue;
                int pl = opts[j - 1][idx[j - 1]];
                if (!pl || !l || c.comps[j - 1].dbl || e.dbl) continue;
                ok = c.glue[j - 1] >> (2 * (pl - 1) + (l - 1)) & 1;
            }
            if (ok && twice - 2 * (m - 1) > c.sum_f()) return false;
            int j = 0;
            for (; j < n; ++j) {
                if (++idx[j] < static_cast<int>(opts[j].size())) break;
                idx[j] = 0;
            }
            if (j == n) break;
        }
    }
    return true;
}

LChain random_chain(std::mt19937& rng, int n, int spread, bool standard) {
    LChain c;
    c.A = std::uniform_int_distribution<int>(-2, 2)(rng);
    for (int j = 0; j < n; ++j) {
        int x1, x2;
        if (standard) {
            int f = std::uniform_int_distribution<int>(1, 4)(rng);
            x1 = f / 2;
            x2 = (f + 1) / 2;
        } else {
            x1 = std::uniform_int_distribution<int>(-spread, spread)(rng);
            x2 = x1 + std::uniform_int_distribution<int>(0, 2)(rng);
        }
        bool dbl = x1 == x2 && rng() % 3 == 0;
        c.comps.push_back({x1, x2, dbl});
    }
    for (int t = 0; t + 1 < n; ++t) c.glue.push_back(static_cast<std::uint8_t>(rng() % 16));
    return c;
}

SubsheafProfile random_profile(std::mt19937& rng, const LChain& c) {
    // all non-maximal choices are valid whatever the gluing
    SubsheafProfile p;
    p.starts = {0};
    for (int j = 1; j < c.n(); ++j)
        if (rng() % 2) p.starts.push_back(j);
    for (auto& e : c.comps) {
        p.choice.push_back(0);
        p.eps.push_back(e.eps_low());
    }
    return p;
}

}  // namespace

TEST_CASE("component classes and epsilons") {
    LComponent u{1, 2, false};
    CHECK(u.cls() == LClass::unstable);
    CHECK(u.eps_max() == 2);
    CHECK(u.eps_low() == 1);
    LComponent s{1, 1, false};
    CHECK(s.cls() == LClass::semistable);
    CHECK(s.eps_max() == 1);
    CHECK(s.eps_low() == 0);
    LComponent d{2, 2, true};
    CHECK(d.cls() == LClass::dbl);
    CHECK(d.max_lines() == 0);
    CHECK(s.max_lines() == 2);
    CHECK(u.max_lines() == 1);
}

TEST_CASE("make_lchain") {
    auto c = make_lchain({1, 2, 3, 4}, {LClass::unstable, LClass::semistable, LClass::unstable, LClass::dbl});
    CHECK(c.n() == 4);
    CHECK(c.sum_f() == 10);
    CHECK(c.unstable_count() == 2);
    CHECK(c.in_standard_form());
    CHECK(c.has_f4());
    CHECK(c.chi_total() == 10 - 6);
    CHECK_THROWS_AS(make_lchain({2}, {LClass::unstable}), Error);
    CHECK_THROWS_AS(make_lchain({5}, {LClass::unstable}), Error);
    CHECK_THROWS_AS(make_lchain({1, 2}, {LClass::unstable}), Error);
}

TEST_CASE("rank-one Euler characteristic") {
    // one semistable component, saturated
    LChain one;
    one.A = 3;
    one.comps = {{2, 2, false}};
    SubsheafProfile p{{0}, {1}, {2}};
    CHECK(chi_rank1(one, p) == 3 + 4 / 2);

    auto ex = gap_two_example(true);
    SubsheafProfile w{{0}, {2, 0}, {2, -1}};
    CHECK(chi_rank1(ex, w) == 1 - 1 + 0);
    SubsheafProfile on1{{0, 1}, {2, 0}, {2, -1}};
    CHECK(chi_rank1(ex, on1) == chi_rank1_pieces(ex, on1));

    // n=3, m=2 by hand: eps (1, 0, 2), A=0, m=2 -> 3 - 2 - 3 + 2
    LChain c;
    c.comps = {{1, 1, false}, {0, 1, false}, {1, 2, false}};
    c.glue = {0, 0};
    SubsheafProfile q{{0, 2}, {1, 0, 2}, {1, 0, 2}};
    CHECK(chi_rank1(c, q) == 0);
    CHECK(chi_rank1_pieces(c, q) == 0);
}

TEST_CASE("profiles are validated") {
    auto ex = gap_two_example(false);
    CHECK_THROWS_AS(check_profile(ex, {{0}, {2, 1}, {2, 0}}), Error);   // not glued
    CHECK_THROWS_AS(check_profile(ex, {{1}, {0, 0}, {-1, -1}}), Error);  // must start at 0
    CHECK_THROWS_AS(check_profile(ex, {{0}, {1, 0}, {2, -1}}), Error);  // unstable max line is 2
    CHECK_THROWS_AS(check_profile(ex, {{0}, {0, 0}, {1, -1}}), Error);  // wrong eps
    CHECK_NOTHROW(check_profile(ex, {{0, 1}, {2, 1}, {2, 0}}));
}

TEST_CASE("example chain one") {
    auto c = gap_two_example(false);
    CHECK(c.chi_total() == 0);
    CHECK(is_l_semistable_bruteforce(c).semistable);
    CHECK(naive_semistable(c));
    auto mu = mu_reference_check(c);
    CHECK_FALSE(mu.semistable);
    CHECK(mu.chi == 1);

    auto g = gap_two_example(true);
    auto r = is_l_semistable_bruteforce(g);
    CHECK_FALSE(r.semistable);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->m() == 1);
    CHECK_FALSE(profile_satisfies(g, *r.witness));
    CHECK(2 * chi_rank1(g, *r.witness) > g.chi_total());
}

TEST_CASE("single semistable component") {
    LChain c;
    c.comps = {{1, 1, false}};
    CHECK(is_l_semistable_bruteforce(c).semistable);
    CHECK(single_interval_criterion(c));
}

TEST_CASE("simple criterion") {
    // semistable, unstable, double with nothing glued
    auto blk = make_lchain({2, 1, 2}, {LClass::semistable, LClass::unstable, LClass::dbl});
    CHECK(single_interval_criterion(blk));
    CHECK(is_l_semistable_bruteforce(blk).semistable);

    auto none = make_lchain({2, 2, 4}, {LClass::semistable, LClass::dbl, LClass::semistable});
    none.set_glued(1, 1, 1);
    none.set_glued(2, 1, 2);
    CHECK(single_interval_criterion(none));

    auto two = make_lchain({1, 2, 3}, {LClass::unstable, LClass::semistable, LClass::unstable});
    CHECK(single_interval_criterion(two));
    two.set_glued(1, 2, 1);
    two.set_glued(2, 1, 2);
    CHECK_FALSE(single_interval_criterion(two));
    CHECK_FALSE(is_l_semistable_bruteforce(two).semistable);

    auto three = make_lchain({1, 1, 1}, {LClass::unstable, LClass::unstable, LClass::unstable});
    CHECK_THROWS_AS(single_interval_criterion(three), Error);
    LChain wide;
    wide.comps = {{0, 2, false}};
    CHECK_THROWS_AS(single_interval_criterion(wide), Error);
}

TEST_CASE("brute force matches plain enumeration, with and without pruning") {
    std::mt19937 rng(20240611);
    for (int it = 0; it < 3000; ++it) {
        int n = 1 + static_cast<int>(rng() % 7);
        auto c = random_chain(rng, n, 2, it % 2 == 0);
        bool naive = naive_semistable(c);
        auto a = is_l_semistable_bruteforce(c, 12, true);
        auto b = is_l_semistable_bruteforce(c, 12, false);
        CHECK(a.semistable == naive);
        CHECK(b.semistable == naive);
        if (!a.semistable) {
            REQUIRE(a.witness.has_value());
            CHECK_NOTHROW(check_profile(c, *a.witness));
            CHECK_FALSE(profile_satisfies(c, *a.witness));
        }
    }
}

TEST_CASE("profile identities") {
    std::mt19937 rng(7);
    for (int it = 0; it < 2000; ++it) {
        int n = 1 + static_cast<int>(rng() % 9);
        auto c = random_chain(rng, n, 3, false);
        auto p = random_profile(rng, c);
        CHECK(profile_node_count(p, n) == p.m() + n - 2);
        CHECK(chi_rank1(c, p) == chi_rank1_pieces(c, p));
        CHECK(profile_satisfies(c, p) == (2 * chi_rank1(c, p) <= c.chi_total()));
    }
}

TEST_CASE("twists leave the verdict unchanged") {
    std::mt19937 rng(99);
    for (int it = 0; it < 500; ++it) {
        int n = 2 + static_cast<int>(rng() % 6);
        auto c = random_chain(rng, n, 2, true);
        int node = 1 + static_cast<int>(rng() % (n - 1));
        int amount = std::uniform_int_distribution<int>(-3, 3)(rng);
        auto t = twist_equivalence(c, node, amount);
        CHECK(is_l_semistable_bruteforce(t).semistable == is_l_semistable_bruteforce(c).semistable);
        CHECK(t.chi_total() == c.chi_total());
    }
    auto c = gap_two_example(false);
    auto same = twist_equivalence(c, 1, 0);
    CHECK(same.comps[0].x2 == c.comps[0].x2);
    CHECK(same.comps[1].x1 == c.comps[1].x1);
    CHECK_THROWS_AS(twist_equivalence(c, 2, 1), Error);
}

TEST_CASE("gluing a block of components preserves semistability") {
    std::mt19937 rng(5);
    for (int it = 0; it < 500; ++it) {
        auto x = random_chain(rng, 1 + static_cast<int>(rng() % 3), 1, true);
        auto y = random_chain(rng, 1 + static_cast<int>(rng() % 3), 1, true);
        y.A = x.A;
        bool vx = is_l_semistable_bruteforce(x).semistable;
        bool vy = is_l_semistable_bruteforce(y).semistable;
        if (!vx || !vy) continue;
        LChain z = x;
        z.comps.insert(z.comps.end(), y.comps.begin(), y.comps.end());
        z.glue.push_back(static_cast<std::uint8_t>(rng() % 16));
        z.glue.insert(z.glue.end(), y.glue.begin(), y.glue.end());
        CHECK(is_l_semistable_bruteforce(z).semistable);
    }
}

TEST_CASE("small exhaustive sweep") {
    auto st = single_interval_sweep(4);
    CHECK(st.chains > 1000);
    CHECK(st.disagreements == 0);
    CHECK(st.unstable_verdicts > 0);
}

TEST_CASE("size cap") {
    std::mt19937 rng(1);
    auto c = random_chain(rng, 14, 1, true);
    CHECK_THROWS_AS(is_l_semistable_bruteforce(c), Error);
    CHECK_NOTHROW(is_l_semistable_bruteforce(c, 14));
}

TEST_CASE("chain JSON") {
    std::mt19937 rng(3);
    for (int it = 0; it < 200; ++it) {
        auto c = random_chain(rng, 1 + static_cast<int>(rng() % 6), 2, false);
        auto back = lchain_from_json(nlohmann::json::parse(lchain_to_json(c).dump()));
        CHECK(back.A == c.A);
        REQUIRE(back.n() == c.n());
        for (int j = 0; j < c.n(); ++j) {
            CHECK(back.comps[j].x1 == c.comps[j].x1);
            CHECK(back.comps[j].x2 == c.comps[j].x2);
            CHECK(back.comps[j].dbl == c.comps[j].dbl);
        }
        for (int t = 1; t < c.n(); ++t)
            for (int l = 1; l <= 2; ++l)
                for (int lp = 1; lp <= 2; ++lp) CHECK(back.glued(t, l, lp) == c.glued(t, l, lp));
    }
    auto f = lchain_from_json(nlohmann::json::parse(
        R"({"f":[2,1],"stability":["semistable","unstable"],"forbidden":[{"node":1,"pairs":[[1,2]]}]})"));
    CHECK(f.n() == 2);
    CHECK(f.glued(1, 1, 2));
    CHECK_FALSE(f.glued(1, 2, 2));
    CHECK_THROWS_AS(lchain_from_json(nlohmann::json::parse(R"({"f":[2],"stability":["wobbly"]})")), Error);
    auto pj = profile_to_json({{0, 1}, {2, 0}, {2, -1}});
    CHECK(pj["interval_starts"] == nlohmann::json::array({1, 2}));
    CHECK(pj["m"] == 2);
}
