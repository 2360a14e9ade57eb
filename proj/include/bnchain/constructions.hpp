// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnchain/numerics.hpp"
#include "bnchain/vanishing.hpp"
#include "json.hpp"

namespace bnchain {

enum class MoveKind { first, second, third };
const char* move_name(MoveKind m);

struct Move {
    MoveKind kind = MoveKind::second;
    int q = 0;  // only for first
    PairGK from, to;
    bool operator==(const Move&) const = default;
};

// move arithmetic without building tables
PairGK apply_move(const PairGK& p, MoveKind kind, int q = 0);

struct ChainLedger {
    int g = 0, k = 0;
    std::vector<BundleSpec> bundles;                    // per component
    std::vector<std::optional<std::vector<int>>> taus;  // set only on unstable components
    VanishingTable table;
    std::vector<Move> provenance;

    PairGK pair() const { return {g, k}; }
    bool weak_standard() const {
        return !provenance.empty() && provenance.back().kind == MoveKind::third;
    }
};

struct StepParams {
    int N = 0, m = 0;
};

ChainLedger base_case();
std::vector<int> terminal_sequence(int N, int k1, int m);
VanishingTable step1_extend(const VanishingTable& t, const StepParams& p);

// the component data appended by a construction
struct NewComponents {
    int N = 0, m = 0, gp = 0;
    std::vector<BundleSpec> bundles;
    std::vector<std::vector<int>> taus;  // empty for semistable
};
NewComponents first_components(int g, int k, int q);
NewComponents second_components(int g, int k);
NewComponents third_components(int g, int k);

ChainLedger construct_first(const ChainLedger& seed, int q);
ChainLedger construct_second(const ChainLedger& seed);
ChainLedger construct_third(const ChainLedger& seed);
ChainLedger apply_construction(const ChainLedger& seed, MoveKind kind, int q = 0);

// replays moves from the base case
ChainLedger replay(const std::vector<Move>& moves);

// infer_bundle agrees with the ledger bundles on every column pair
std::vector<Violation> check_ledger_bundles(const ChainLedger& l);

struct GoldenEntry {
    std::string formula;
    int column = 0;  // absolute column index in the ledger table
    enum class Status { match, mismatch, skipped } status = Status::skipped;
    std::vector<int> expected, actual;
    std::string note;
};
struct GoldenReport {
    std::vector<GoldenEntry> entries;
    int matched() const;
    int mismatched() const;
    int skipped() const;
    bool ok() const { return mismatched() == 0; }
};
GoldenReport verify_construction_tables(const ChainLedger& l);

// independent re-check of the Step-1 matrix: the six extension conditions,
// block shapes of new rows, monotonicity and sign
std::vector<Violation> verify_step1(const VanishingTable& seed, const StepParams& p,
                                    const VanishingTable& out);

nlohmann::json ledger_to_json(const ChainLedger& l);
ChainLedger ledger_from_json(const nlohmann::json& j);

}  // namespace bnchain
