// SPDX-License-Identifier: Apache-2.0
#include "bnchain/constructions.hpp"
#include "bnchain/error.hpp"
#include "bnchain/numerics.hpp"
#include "doctest.h"

using namespace bnchain;

TEST_CASE("rho values") {
    CHECK(rho({6, 5}) == 0);
    CHECK(rho({3, 2}) == 3);
    CHECK(rho({19, 9}) == 9);
}

TEST_CASE("L(g,k)") {
    CHECK(bn_gap_doubled({6, 5}) == -1);
    CHECK(bn_gap_doubled({15, 8}) == -2);
    for (int k1 = 1; k1 <= 40; ++k1) CHECK(bn_gap_doubled({k1 * k1 + k1, 2 * k1 + 1}) == -1);
    // odd k always gives an odd value
    for (int k = 3; k <= 41; k += 2)
        for (int g = 1; g < 300; g += 7) CHECK(bn_gap_doubled({g, k}) % 2 != 0);
}

TEST_CASE("boundary sequences") {
    CHECK(boundary_sequence(5) == std::vector<int>{0, 0, 1, 1, 2});
    CHECK(boundary_sequence(4) == std::vector<int>{0, 0, 1, 1});
    CHECK(boundary_sequence(9) == std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3, 4});
    CHECK_THROWS_AS(boundary_sequence(1), Error);
    for (int k = 2; k <= 60; ++k) {
        auto s = boundary_sequence(k);
        REQUIRE(static_cast<int>(s.size()) == k);
        CHECK(s.front() == 0);
        CHECK(s.back() == (k - 1) / 2);
        for (int i = 0; i + 1 < k; ++i) CHECK(s[i] <= s[i + 1]);
        for (int i = 0; i + 2 < k; ++i) CHECK(s[i] != s[i + 2]);
        auto r = boundary_sequence_rev(k);
        CHECK(std::equal(s.rbegin(), s.rend(), r.begin()));
    }
}

TEST_CASE("classical rho") {
    CHECK(classical_rho(3, 5, 6) == -3);
    CHECK(classical_rho(3, 5, 6) == 6 - 4 - 4 - 1);
    CHECK(classical_rho(1, 0, 0) == 0);
}

TEST_CASE("strict semistable exclusion") {
    CHECK(strict_semistable_excluded({6, 5}).excluded);
    CHECK(strict_semistable_excluded({15, 8}).excluded);
    CHECK(strict_semistable_excluded({15, 8}).classical == -1);
    for (int k1 = 2; k1 < 30; ++k1) CHECK_FALSE(strict_semistable_excluded({k1 * k1 + k1 + 1, 2 * k1 + 1}).excluded);
}

TEST_CASE("rho differences of the moves match rho evaluated at both ends") {
    for (int k1 = 2; k1 <= 100; ++k1) {
        PairGK p{k1 * k1 + k1, 2 * k1 + 1};
        for (int q = 1; q <= max_speed(p.k); ++q)
            CHECK(rho(apply_move(p, MoveKind::first, q)) - rho(p) == delta_rho_first(k1, q));
        CHECK(rho(apply_move(p, MoveKind::second)) - rho(p) == delta_rho_second(k1));
        CHECK(rho(apply_move(p, MoveKind::third)) - rho(p) == delta_rho_third(k1));
    }
}

TEST_CASE("max_speed agrees with floor((k-1)/6) on odd k") {
    for (int k = 5; k < 400; k += 2) CHECK(max_speed(k) == std::max(1, (k - 1) / 6));
}

TEST_CASE("move arithmetic and L") {
    for (int k1 = 2; k1 <= 60; ++k1) {
        PairGK p{k1 * k1 + k1 - 3, 2 * k1 + 1};
        CHECK(bn_gap_doubled(apply_move(p, MoveKind::second)) == bn_gap_doubled(p));
        for (int q = 1; q <= max_speed(p.k); ++q)
            CHECK(bn_gap_doubled(apply_move(p, MoveKind::first, q)) == bn_gap_doubled(p) - 2 * q);
    }
}
