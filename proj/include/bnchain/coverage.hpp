// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bnchain/constructions.hpp"
#include "bnchain/numerics.hpp"
#include "json.hpp"

namespace bnchain {

struct RegionVerdict {
    bool in = false;
    std::vector<std::string> tags;  // gap-1, k mod 4 classes
    std::string binding;            // which lower bound binds: "formula", "rho" or "both"
    bool weak_even_bound_only = false;   // meets the -2 even-k bound but not the -1 one
    bool prior_result_range = false;  // even k with k1^2 <= g <= k1^2+k1 (L >= 0)
    std::string reason;
};

// g range of the covered region for k (empty when lower > upper)
int region_lower(int k);
int region_upper(int k);
RegionVerdict in_region(const PairGK& p);
std::vector<PairGK> enumerate_region(int k_max);

struct DerivationPath {
    PairGK start{6, 5};
    std::vector<Move> moves;
    PairGK end;
};
DerivationPath derivation_path(const PairGK& p);
nlohmann::json path_to_json(const DerivationPath& d);

boost::rational<long long> asymptotic_ratio(int k1);

struct RegionRow {
    int k = 0, g_min = 0, g_max = 0, count = 0;
};
std::vector<RegionRow> region_rows(int k_max);
std::string region_csv(int k_max);

}  // namespace bnchain
