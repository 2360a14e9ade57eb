// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bnchain/constructions.hpp"
#include "json.hpp"

namespace bnchain {

// rows are 0-based here; reports print them 1-based
struct ConfigurationPartition {
    int node = 0;
    std::vector<std::set<int>> blocks;
    bool operator==(const ConfigurationPartition&) const = default;
};

// rows whose value appears once in the column
std::set<int> nonrepeated(const std::vector<int>& col);

// blocks meeting s are fused with s
ConfigurationPartition merge_blocks(const ConfigurationPartition& cfg, const std::set<int>& s);
// same partition up to block order
bool same_partition(const ConfigurationPartition& x, const ConfigurationPartition& y);

// rows that must land on one point of the fiber at the left node
std::vector<std::set<int>> forced_groups(const BundleSpec& e, const std::vector<int>& a, const std::vector<int>& b);

int m_bound_semistable(const BundleSpec& e, const ConfigurationPartition& cfg, const std::vector<int>& a,
                       const std::vector<int>& b);
int m_bound_double(const BundleSpec& e);

struct UnstableBound {
    int eps = 0;
    std::vector<int> M;  // 1-based rows
    int bound = 0;
};
UnstableBound m_bound_unstable_detail(const BundleSpec& e, const std::vector<int>& a, const std::vector<int>& b);
int m_bound_unstable(const BundleSpec& e, const std::vector<int>& a, const std::vector<int>& b);

ConfigurationPartition propagate_configuration(const BundleSpec& e, const ConfigurationPartition& cfg,
                                               const std::vector<int>& a, const std::vector<int>& b);

struct NodeEntry {
    int j = 0;
    std::string rule;     // base, step1, semistable, double, unstable
    int bound = 0;
    int correction = 0;   // declarative codimension, <= 0
    int engine_merges = 0;  // codimension seen by the configuration engine
    std::string tag;
    int running = 0;
};

struct BlockSum {
    std::string name;
    int first = 0, last = 0;  // node range
    int sum = 0;
    int expected = 0;  // -1 when no block total is asserted
    int correction = 0, engine_merges = 0;
};

struct FiberBoundReport {
    std::vector<NodeEntry> entries;
    std::vector<BlockSum> blocks;
    int step1 = 0;  // +1 per first/second move
    int total = 0;
    int rho = 0;
    bool ok() const;  // total equals rho and every asserted block sum holds
};

// -1/-2 codimension entries keyed by node, for the move from (g,k) with speed q
std::map<int, int> correction_table(MoveKind kind, int g, int k, int q);
// per-node bounds listed for the new nodes of a move
std::map<int, int> expected_node_bounds(MoveKind kind, int g, int k, int q);

struct MoveAccount {
    Move move;
    std::vector<NodeEntry> entries;  // new nodes only
    std::vector<BlockSum> blocks;
    int step1 = 0;
    int total = 0;
};
// bounds for the nodes a move adds; out is the ledger right after the move
MoveAccount account_move(const ChainLedger& out, const Move& mv);

FiberBoundReport account_dimension(const ChainLedger& ledger);
nlohmann::json fiber_report_to_json(const FiberBoundReport& r);

}  // namespace bnchain
