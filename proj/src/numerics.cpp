// SPDX-License-Identifier: Apache-2.0
#include "bnchain/numerics.hpp"

#include <algorithm>

#include "bnchain/error.hpp"

namespace bnchain {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::decode_mismatch: return "decode-mismatch";
        case ErrorCode::infeasible_degree: return "infeasible-degree";
        case ErrorCode::feasibility: return "feasibility";
        case ErrorCode::not_applicable: return "not-applicable";
        case ErrorCode::construction_bug: return "construction-bug";
        case ErrorCode::too_large: return "too-large";
        case ErrorCode::search_failure: return "search-failure";
        case ErrorCode::invalid_profile: return "invalid-profile";
        case ErrorCode::cannot_account: return "cannot-account";
        case ErrorCode::parse_error: return "parse-error";
    }
    return "unknown";
}

PairGK make_pair_gk(int g, int k) {
    if (g < 1 || k < 2)
        throw Error(ErrorCode::invalid_parameter, "need g >= 1 and k >= 2");
    return PairGK{g, k};
}

long long rho(const PairGK& p) {
    long long g = p.g, k = p.k;
    return 3 * g - 3 - k * (k + 1) / 2;
}

long long bn_gap_doubled(const PairGK& p) {
    long long g = p.g, k1 = p.k1();
    if (p.k % 2 == 0) return 2 * (g - k1 * k1);
    return 2 * g - 2 * k1 * k1 - 2 * k1 - 1;
}

long long classical_rho(long long k, long long d, long long g) {
    return k * (d - k + 1) - (k - 1) * g;
}

std::vector<int> boundary_sequence(int k) {
    if (k < 2) throw Error(ErrorCode::invalid_parameter, "boundary sequence needs k >= 2");
    std::vector<int> s;
    s.reserve(k);
    for (int v = 0; v < k / 2; ++v) {
        s.push_back(v);
        s.push_back(v);
    }
    if (k % 2) s.push_back(k / 2);
    return s;
}

std::vector<int> boundary_sequence_rev(int k) {
    auto s = boundary_sequence(k);
    std::reverse(s.begin(), s.end());
    return s;
}

ExclusionVerdict strict_semistable_excluded(const PairGK& p) {
    ExclusionVerdict v;
    v.gap_doubled = bn_gap_doubled(p);
    long long k1 = p.k1();
    if (p.k % 2) {
        v.classical = classical_rho(k1 + 1, p.g - 1, p.g);
        v.reason = "odd k: rho(k1+1,g-1,g)";
    } else {
        v.classical = classical_rho(k1, p.g - 1, p.g);
        v.reason = "even k: rho(k1,g-1,g)";
    }
    if (v.gap_doubled >= 0) {
        v.reason = "L >= 0";
        return v;
    }
    v.excluded = v.classical < 0;
    if (!v.excluded) v.reason += " is non-negative";
    else v.reason += " < 0";
    return v;
}

int max_speed(int k) { return std::max(1, (k / 2) / 3); }

long long delta_rho_first(int k1, int q) { return 4LL * k1 + 4 - 3LL * q; }
long long delta_rho_second(int k1) { return 2LL * k1 + 1; }
long long delta_rho_third(int k1) { return 3LL * k1; }

}  // namespace bnchain
