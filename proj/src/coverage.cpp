// SPDX-License-Identifier: Apache-2.0
#include "bnchain/coverage.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "bnchain/error.hpp"

namespace bnchain {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// smallest g with rho(g,k) >= 0
int rho_lower(int k) {
    long long need = static_cast<long long>(k) * (k + 1) / 2 + 3;
    return static_cast<int>(floor_div(need + 2, 3));
}

int formula_lower(int k) {
    long long k1 = k / 2;
    if (k % 2) return static_cast<int>(k1 * k1 + k1 - ((k1 - 2) * (k1 - 2) + 3) / 12);
    return static_cast<int>(k1 * k1 - (k1 - 4) * (k1 - 4) / 12 - 1);
}

bool regular(int k) { return (k % 2 && k >= 5) || (k % 2 == 0 && k >= 8); }

}  // namespace

int region_lower(int k) { return std::max(formula_lower(k), rho_lower(k)); }

int region_upper(int k) {
    long long k1 = k / 2;
    // even k stops below k1^2, where L becomes non-negative
    return static_cast<int>(k % 2 ? k1 * k1 + k1 : k1 * k1 - 1);
}

RegionVerdict in_region(const PairGK& p) {
    RegionVerdict v;
    const long long g = p.g, k = p.k, k1 = p.k1();
    if (!regular(p.k)) {
        v.reason = "k must be odd >= 5 or even >= 8";
        return v;
    }
    int lo_f = formula_lower(p.k), lo_r = rho_lower(p.k), hi = region_upper(p.k);
    v.binding = lo_f > lo_r ? "formula" : lo_f < lo_r ? "rho" : "both";
    if (k % 2 == 0 && g >= k1 * k1 && g <= k1 * k1 + k1) v.prior_result_range = true;
    if (k % 2 == 0 && g >= k1 * k1 - 2 - (k1 - 4) * (k1 - 4) / 12 && g < lo_f) v.weak_even_bound_only = true;
    long long L = bn_gap_doubled(p);
    if (L == -1 && rho(p) >= 0) v.tags.push_back("gap-1");
    if (k >= 9 && k % 4 == 1 && g <= k1 * k1 + k1 && g >= k1 * k1 + k1 - 1 - (k1 - 2) * (k1 - 2) / 12)
        v.tags.push_back("k=1 mod 4");
    if (k >= 7 && k % 4 == 3 && g <= k1 * k1 + k1 && g >= k1 * k1 + k1 - ((k1 - 2) * (k1 - 2) + 3) / 12)
        v.tags.push_back("k=3 mod 4");
    if (k >= 8 && k % 4 == 0 && g <= k1 * k1 + k1 && g >= k1 * k1 - 2 - (k1 - 4) * (k1 - 4) / 12)
        v.tags.push_back("k=0 mod 4");
    if (k >= 10 && k % 4 == 2 && g <= k1 * k1 + k1 && g >= k1 * k1 - 1 - (k1 - 4) * (k1 - 4) / 12)
        v.tags.push_back("k=2 mod 4");
    if (g < lo_f) v.reason = "below the closed-form lower bound " + std::to_string(lo_f);
    else if (g < lo_r) v.reason = "rho < 0";
    else if (g > hi) v.reason = v.prior_result_range ? "L >= 0 (prior-result range)" : "above k1^2+k1";
    else v.in = true;
    return v;
}

std::vector<PairGK> enumerate_region(int k_max) {
    if (k_max < 5) throw Error(ErrorCode::invalid_parameter, "k_max must be at least 5");
    std::vector<PairGK> out;
    for (int k = 5; k <= k_max; ++k) {
        if (!regular(k)) continue;
        for (int g = region_lower(k); g <= region_upper(k); ++g) out.push_back({g, k});
    }
    return out;
}

DerivationPath derivation_path(const PairGK& target) {
    if (target.k < 5 || rho(target) < 0) throw Error(ErrorCode::invalid_parameter, "needs k >= 5 and rho >= 0");
    const PairGK start{6, 5};
    PairGK odd = target;
    bool third = target.k % 2 == 0;
    if (third) odd = {target.g - 3 * (target.k - 2) / 2, target.k - 3};
    if (odd.k < 5 || odd.g < 6)
        throw Error(ErrorCode::search_failure, "no construction path reaches (" + std::to_string(target.g) + "," + std::to_string(target.k) + ")");

    std::map<PairGK, Move> parent;
    std::deque<PairGK> queue{start};
    std::map<PairGK, bool> seen{{start, true}};
    bool found = odd == start;
    while (!queue.empty() && !found) {
        auto p = queue.front();
        queue.pop_front();
        std::vector<Move> moves;
        for (int q = max_speed(p.k); q >= 1; --q)
            moves.push_back({MoveKind::first, q, p, apply_move(p, MoveKind::first, q)});
        moves.push_back({MoveKind::second, 0, p, apply_move(p, MoveKind::second)});
        for (auto& mv : moves) {
            if (mv.to.k > odd.k || mv.to.g > odd.g || seen.count(mv.to) || rho(mv.to) < 0) continue;
            seen[mv.to] = true;
            parent[mv.to] = mv;
            if (mv.to == odd) {
                found = true;
                break;
            }
            queue.push_back(mv.to);
        }
    }
    if (!found) throw Error(ErrorCode::search_failure, "no construction path reaches (" + std::to_string(odd.g) + "," + std::to_string(odd.k) + ")");
    DerivationPath d;
    d.start = start;
    for (PairGK p = odd; p != start; p = parent[p].from) d.moves.push_back(parent[p]);
    std::reverse(d.moves.begin(), d.moves.end());
    if (third) d.moves.push_back({MoveKind::third, 0, odd, apply_move(odd, MoveKind::third)});
    d.end = d.moves.empty() ? start : d.moves.back().to;
    if (d.end != target) throw Error(ErrorCode::search_failure, "path ends at the wrong pair");
    return d;
}

nlohmann::json path_to_json(const DerivationPath& d) {
    auto moves = nlohmann::json::array();
    for (auto& mv : d.moves)
        moves.push_back({{"move", move_name(mv.kind)}, {"q", mv.q}, {"from", {mv.from.g, mv.from.k}}, {"to", {mv.to.g, mv.to.k}}});
    return {{"start", {d.start.g, d.start.k}}, {"end", {d.end.g, d.end.k}}, {"moves", moves}};
}

boost::rational<long long> asymptotic_ratio(int k1) {
    if (k1 < 2) throw Error(ErrorCode::invalid_parameter, "k1 must be at least 2");
    long long sq = static_cast<long long>(k1) * k1;
    return {region_lower(2 * k1 + 1), sq};
}

std::vector<RegionRow> region_rows(int k_max) {
    std::vector<RegionRow> rows;
    for (auto& p : enumerate_region(k_max)) {
        if (rows.empty() || rows.back().k != p.k) rows.push_back({p.k, p.g, p.g, 0});
        rows.back().g_max = p.g;
        ++rows.back().count;
    }
    return rows;
}

std::string region_csv(int k_max) {
    std::ostringstream os;
    os << "k,g_min,g_max,count\n";
    for (auto& r : region_rows(k_max)) os << r.k << ',' << r.g_min << ',' << r.g_max << ',' << r.count << '\n';
    return os.str();
}

}  // namespace bnchain
