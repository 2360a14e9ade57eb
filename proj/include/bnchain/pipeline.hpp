// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnchain/constructions.hpp"
#include "bnchain/coverage.hpp"
#include "bnchain/dimension.hpp"
#include "json.hpp"

namespace bnchain {

struct StageResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct PipelineReport {
    PairGK pair;
    std::vector<StageResult> stages;
    std::optional<DerivationPath> path;
    std::optional<FiberBoundReport> fiber;
    bool in_region = false;
    bool ok() const;
    std::string failed_stage() const;
};

// standardness, bundles, canonical determinant, golden columns, dimension total
PipelineReport verify_ledger(const ChainLedger& l);
// derivation path, replay, then verify_ledger
PipelineReport verify_pair(const PairGK& p);

nlohmann::json pipeline_to_json(const PipelineReport& r);

}  // namespace bnchain
