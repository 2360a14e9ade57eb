// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bnchain {

enum class LClass { semistable, unstable, dbl };

// E|C_j = L_{j,1} + L_{j,2} with chi(L_{j,1}) = A + x1 <= chi(L_{j,2}) = A + x2.
// Line 2 is the destabilizing one when x1 < x2.
struct LComponent {
    int x1 = 0, x2 = 0;
    bool dbl = false;  // isomorphic summands, only when x1 == x2
    LClass cls() const;
    int f() const { return x1 + x2; }
    int eps_max() const { return x2; }
    int eps_low() const { return x1 < x2 ? x1 : x1 - 1; }
    int max_lines() const;  // maximal lines that need a gluing entry: 2, 1, or 0 for double
};

struct LChain {
    int A = 0;
    std::vector<LComponent> comps;
    // glue[t] for the node between components t+1 and t+2: bit 2*(l-1)+(l'-1) set
    // when line l of the left component persists as line l' of the right one
    std::vector<std::uint8_t> glue;

    int n() const { return static_cast<int>(comps.size()); }
    int sum_f() const;
    int unstable_count() const;
    bool in_standard_form() const;  // every f in 1..4 with chi gap <= 1
    bool has_f4() const;
    long long chi_total() const;  // 2nA + sum f - 2(n-1)
    bool glued(int node, int l, int lp) const;  // node 1..n-1
    void set_glued(int node, int l, int lp, bool on = true);
};

// f in 1..4: odd f is unstable, even f semistable or double
LChain make_lchain(const std::vector<int>& f, const std::vector<LClass>& cls, int A = 0);

struct SubsheafProfile {
    std::vector<int> starts;  // first component (0-based) of each interval, starts[0] == 0
    std::vector<int> choice;  // 0 non-maximal, else the maximal line (1 or 2; 1 for double)
    std::vector<int> eps;
    int m() const { return static_cast<int>(starts.size()); }
};

// validates the profile against the chain; throws invalid_profile
void check_profile(const LChain& c, const SubsheafProfile& p);
long long chi_rank1(const LChain& c, const SubsheafProfile& p);
// sum of chi(F_i) over the intervals, piece by piece
long long chi_rank1_pieces(const LChain& c, const SubsheafProfile& p);
// sum_i (m_i - 1 + nu_i)
int profile_node_count(const SubsheafProfile& p, int n);
// 2 sum eps - 2(m-1) <= sum f
bool profile_satisfies(const LChain& c, const SubsheafProfile& p);

struct LStabResult {
    bool semistable = true;
    std::optional<SubsheafProfile> witness;
    long long visited = 0;
};
LStabResult is_l_semistable_bruteforce(const LChain& c, int cap = 12, bool prune = true);

bool single_interval_criterion(const LChain& c);

LChain twist_equivalence(const LChain& c, int node, int amount);

struct MuCheck {
    bool semistable = true;
    int first = 0, last = 0;  // 0-based interval of the witness
    long long chi = 0;
};
// rank-one subsheaves on one interval, zero elsewhere, plus the constant-rank ones; needs chi(E) = 0
MuCheck mu_reference_check(const LChain& c);

LChain gap_two_example(bool glue_destabilizing = false);

struct SweepStats {
    long long chains = 0, disagreements = 0, unstable_verdicts = 0;
    std::string first_disagreement;
};
// every class vector with at most two unstable components, every f, every gluing
// relation on at most max_nodes nodes; compares the single-interval criterion with the brute force
SweepStats single_interval_sweep(int n_max, int max_nodes = 3);

nlohmann::json lchain_to_json(const LChain& c);
LChain lchain_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const SubsheafProfile& p);

}  // namespace bnchain
