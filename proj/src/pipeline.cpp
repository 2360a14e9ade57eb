// SPDX-License-Identifier: Apache-2.0
#include "bnchain/pipeline.hpp"

#include <algorithm>

#include "bnchain/determinant.hpp"
#include "bnchain/error.hpp"

namespace bnchain {

bool PipelineReport::ok() const {
    return !stages.empty() && std::all_of(stages.begin(), stages.end(), [](auto& s) { return s.pass; });
}

std::string PipelineReport::failed_stage() const {
    for (auto& s : stages)
        if (!s.pass) return s.name;
    return "";
}

PipelineReport verify_ledger(const ChainLedger& l) {
    PipelineReport r;
    r.pair = l.pair();
    r.in_region = in_region(l.pair()).in;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        r.stages.push_back({std::move(name), pass, std::move(detail)});
    };
    auto mode = l.weak_standard() ? StandardMode::weak : StandardMode::full;
    auto st = check_standard(l.table, mode);
    add(mode == StandardMode::full ? "standard" : "standard (weak)", st.ok(), format_violations(st.violations));
    auto bv = check_ledger_bundles(l);
    add("bundles", bv.empty(), format_violations(bv));
    try {
        auto det = check_canonical_chain(l.bundles, l.table.d);
        std::string bad;
        for (int j : det.failing()) bad += (bad.empty() ? "" : ",") + std::to_string(j);
        add("canonical determinant", det.ok(), bad.empty() ? "" : "failing components " + bad);
    } catch (const Error& e) {
        add("canonical determinant", false, e.what());
    }
    auto gold = verify_construction_tables(l);
    add("golden columns", gold.ok(),
        std::to_string(gold.matched()) + " matched, " + std::to_string(gold.mismatched()) + " mismatched, " +
            std::to_string(gold.skipped()) + " skipped");
    try {
        auto fr = account_dimension(l);
        r.fiber = fr;
        bool blocks = std::all_of(fr.blocks.begin(), fr.blocks.end(), [](auto& b) {
            return (b.expected < 0 || b.sum == b.expected) && b.correction == -b.engine_merges;
        });
        add("dimension blocks", blocks);
        add("rho equality", fr.total == fr.rho,
            "total " + std::to_string(fr.total) + ", rho " + std::to_string(fr.rho));
    } catch (const Error& e) {
        add("dimension", false, e.what());
    }
    return r;
}

PipelineReport verify_pair(const PairGK& p) {
    PipelineReport r;
    r.pair = p;
    DerivationPath path;
    try {
        path = derivation_path(p);
    } catch (const Error& e) {
        r.in_region = in_region(p).in;
        r.stages.push_back({"derivation", false, e.what()});
        return r;
    }
    ChainLedger l;
    try {
        l = replay(path.moves);
    } catch (const Error& e) {
        r.stages.push_back({"derivation", true, std::to_string(path.moves.size()) + " moves"});
        r.stages.push_back({"construction", false, e.what()});
        return r;
    }
    auto v = verify_ledger(l);
    v.path = path;
    v.stages.insert(v.stages.begin(), {{"derivation", true, std::to_string(path.moves.size()) + " moves"},
                                       {"construction", l.pair() == p, "g=" + std::to_string(l.g) + " k=" + std::to_string(l.k)}});
    return v;
}

nlohmann::json pipeline_to_json(const PipelineReport& r) {
    auto stages = nlohmann::json::array();
    for (auto& s : r.stages) stages.push_back({{"stage", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    nlohmann::json j{{"g", r.pair.g}, {"k", r.pair.k}, {"in_region", r.in_region}, {"stages", stages}, {"ok", r.ok()}};
    if (r.path) j["path"] = path_to_json(*r.path);
    if (r.fiber) {
        j["total"] = r.fiber->total;
        j["rho"] = r.fiber->rho;
    }
    return j;
}

}  // namespace bnchain
