// SPDX-License-Identifier: Apache-2.0
#include "bnchain/determinant.hpp"

#include "bnchain/error.hpp"

namespace bnchain {

std::vector<std::pair<int, int>> odd_blocks(const std::vector<int>& d) {
    auto odd = odd_nodes(d);
    if (odd.size() % 2)
        throw Error(ErrorCode::not_applicable, "odd number of odd degrees");
    std::vector<std::pair<int, int>> out;
    for (std::size_t s = 0; s + 1 < odd.size(); s += 2) out.emplace_back(odd[s], odd[s + 1]);
    return out;
}

DetTarget canonical_det_target(int j, const std::vector<int>& d,
                               const std::vector<std::pair<int, int>>& blocks) {
    int g = static_cast<int>(d.size());
    if (j < 1 || j > g) throw Error(ErrorCode::invalid_parameter, "component out of range");
    auto odd = odd_nodes(d);
    for (std::size_t s = 0; s < odd.size(); ++s) {
        int want = s % 2 == 0 ? 2 * g - 1 : 2 * g - 3;
        if (d[odd[s] - 1] != want)
            throw Error(ErrorCode::not_applicable, "odd degrees do not alternate 2g-1 / 2g-3");
    }
    int dj = d[j - 1];
    for (auto [lo, hi] : blocks)
        if (lo < j && j <= hi) return {2 * j - 3, dj - (2 * j - 3)};
    return {2 * j - 2, dj - (2 * j - 2)};
}

bool DetReport::ok() const {
    for (auto& e : entries)
        if (!e.pass) return false;
    return true;
}

std::vector<int> DetReport::failing() const {
    std::vector<int> out;
    for (auto& e : entries)
        if (!e.pass) out.push_back(e.j);
    return out;
}

DetReport check_canonical_chain(const std::vector<BundleSpec>& bundles, const std::vector<int>& d) {
    if (bundles.size() != d.size()) throw Error(ErrorCode::invalid_parameter, "bundle count != g");
    auto blocks = odd_blocks(d);
    DetReport r;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        int j = static_cast<int>(i) + 1;
        DetEntry e;
        e.j = j;
        e.expected = canonical_det_target(j, d, blocks);
        e.actual = {bundles[i].l1 + bundles[i].l2, bundles[i].r1 + bundles[i].r2};
        e.pass = e.expected == e.actual;
        r.entries.push_back(e);
    }
    return r;
}

nlohmann::json det_report_to_json(const DetReport& r) {
    auto out = nlohmann::json::array();
    for (auto& e : r.entries)
        out.push_back({{"j", e.j},
                       {"expected", {e.expected.left, e.expected.right}},
                       {"actual", {e.actual.left, e.actual.right}},
                       {"pass", e.pass}});
    return out;
}

DetTarget fixed_det_target(int j, const std::vector<int>& d, const std::vector<int>& w) {
    if (d.size() != w.size()) throw Error(ErrorCode::invalid_parameter, "d and w lengths differ");
    int g = static_cast<int>(d.size());
    if (j < 1 || j > g) throw Error(ErrorCode::invalid_parameter, "component out of range");
    // sums over t = 1..j-1 and t = 1..j (the t = 0 term is empty).
    // sign of the left sum follows the telescoping rule left_{j+1} = -right_j
    int left = 0, right = 0;
    for (int t = 1; t < j; ++t) left += w[t - 1] - d[t - 1];
    for (int t = 1; t <= j; ++t) right += d[t - 1] - w[t - 1];
    return {left, right};
}

}  // namespace bnchain
