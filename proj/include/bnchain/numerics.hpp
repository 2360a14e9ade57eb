// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace bnchain {

struct PairGK {
    int g = 0;
    int k = 0;
    int k1() const { return k / 2; }
    bool operator==(const PairGK&) const = default;
    auto operator<=>(const PairGK&) const = default;
};

// throws invalid_parameter unless g >= 1, k >= 2
PairGK make_pair_gk(int g, int k);

long long rho(const PairGK& p);
// L(g,k) = 2(g - k1^2) or 2g - 2k1^2 - 2k1 - 1; odd for odd k
long long bn_gap_doubled(const PairGK& p);
long long classical_rho(long long k, long long d, long long g);

std::vector<int> boundary_sequence(int k);
std::vector<int> boundary_sequence_rev(int k);

struct ExclusionVerdict {
    bool excluded = false;
    long long gap_doubled = 0;
    long long classical = 0;  // the relevant classical rho
    std::string reason;
};
ExclusionVerdict strict_semistable_excluded(const PairGK& p);

// q range for the first move on odd k
int max_speed(int k);
// rho differences of the three moves, from the closed forms
long long delta_rho_first(int k1, int q);
long long delta_rho_second(int k1);
long long delta_rho_third(int k1);

}  // namespace bnchain
