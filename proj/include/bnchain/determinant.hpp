// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "bnchain/vanishing.hpp"
#include "json.hpp"

namespace bnchain {

struct DetTarget {
    int left = 0;   // coefficient of P_j
    int right = 0;  // coefficient of P_{j+1}
    bool operator==(const DetTarget&) const = default;
};

// half-open intervals (j_{2s-1}, j_{2s}] from the odd entries of d
std::vector<std::pair<int, int>> odd_blocks(const std::vector<int>& d);

DetTarget canonical_det_target(int j, const std::vector<int>& d,
                               const std::vector<std::pair<int, int>>& blocks);

struct DetEntry {
    int j = 0;
    DetTarget expected, actual;
    bool pass = false;
};
struct DetReport {
    std::vector<DetEntry> entries;
    bool ok() const;
    std::vector<int> failing() const;
};

DetReport check_canonical_chain(const std::vector<BundleSpec>& bundles, const std::vector<int>& d);
nlohmann::json det_report_to_json(const DetReport& r);

DetTarget fixed_det_target(int j, const std::vector<int>& d, const std::vector<int>& w);

}  // namespace bnchain
