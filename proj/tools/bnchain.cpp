// SPDX-License-Identifier: Apache-2.0
// bnchain: build, verify, account and export chain ledgers from the command line.
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bnchain/coverage.hpp"
#include "bnchain/dimension.hpp"
#include "bnchain/error.hpp"
#include "bnchain/lstab.hpp"
#include "bnchain/pipeline.hpp"
#include "json.hpp"

using namespace bnchain;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIO = 3 };

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw IOError(path + ": " + e.what());
    }
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw IOError("cannot write " + path.string());
    out << text;
    if (!out) throw IOError("write failed for " + path.string());
}

void print_pipeline(const PipelineReport& r) {
    std::cout << "pair (" << r.pair.g << "," << r.pair.k << ")";
    if (!r.in_region) std::cout << " [outside the closed-form region]";
    std::cout << "\n";
    for (auto& s : r.stages) {
        std::cout << "  " << (s.pass ? "PASS " : "FAIL ") << s.name;
        if (!s.detail.empty()) std::cout << ": " << s.detail;
        std::cout << "\n";
    }
    if (r.path) {
        std::cout << "  path: (6,5)";
        for (auto& mv : r.path->moves) {
            std::cout << " -" << move_name(mv.kind);
            if (mv.kind == MoveKind::first) std::cout << "(q=" << mv.q << ")";
            std::cout << "-> (" << mv.to.g << "," << mv.to.k << ")";
        }
        std::cout << "\n";
    }
    if (r.fiber) std::cout << "  total " << r.fiber->total << ", rho " << r.fiber->rho << "\n";
    std::cout << (r.ok() ? "PASS" : "FAIL at " + r.failed_stage()) << "\n";
}

ChainLedger build_pair(int g, int k) {
    auto path = derivation_path({g, k});
    return replay(path.moves);
}

int cmd_verify(int g, int k, const std::string& ledger, bool json) {
    PipelineReport r;
    if (!ledger.empty()) {
        r = verify_ledger(ledger_from_json(read_json(ledger)));
    } else {
        PairGK p{g, k};
        auto v = in_region(p);
        r = verify_pair(p);
        if (!v.in && r.failed_stage() == "derivation") {
            if (json) std::cout << nlohmann::json{{"g", g}, {"k", k}, {"ok", false}, {"reject", v.reason}}.dump(2) << "\n";
            else std::cout << "REJECT: (" << g << "," << k << ") not in region: " << v.reason << "\n";
            return kFail;
        }
    }
    if (json) std::cout << pipeline_to_json(r).dump(2) << "\n";
    else print_pipeline(r);
    return r.ok() ? kPass : kFail;
}

int cmd_account(int g, int k, const std::string& csv_dir, bool json) {
    auto l = build_pair(g, k);
    auto fr = account_dimension(l);
    if (!csv_dir.empty()) {
        std::ostringstream os;
        os << "node,rule,bound,correction,tag,running_total\n";
        for (auto& e : fr.entries)
            os << e.j << ',' << e.rule << ',' << e.bound << ',' << e.correction << ',' << e.tag << ',' << e.running << '\n';
        write_file(fs::path(csv_dir) / "fiber_bounds.csv", os.str());
    }
    if (json) {
        std::cout << fiber_report_to_json(fr).dump(2) << "\n";
    } else {
        std::cout << "node  rule        bound  corr  running\n";
        for (auto& e : fr.entries) {
            std::cout << std::setw(4) << e.j << "  " << std::left << std::setw(10) << e.rule << std::right << std::setw(6)
                      << e.bound << std::setw(6) << e.correction << std::setw(9) << e.running;
            if (!e.tag.empty()) std::cout << "  " << e.tag;
            std::cout << "\n";
        }
        for (auto& b : fr.blocks)
            std::cout << "block " << b.name << ": " << b.sum << (b.expected >= 0 ? " (expected " + std::to_string(b.expected) + ")" : "")
                      << "\n";
        std::cout << "total " << fr.total << ", rho " << fr.rho << (fr.ok() ? "  PASS" : "  FAIL") << "\n";
    }
    return fr.ok() ? kPass : kFail;
}

int cmd_region(int k_max, const std::string& csv_dir, bool json) {
    if (k_max < 5) throw Error(ErrorCode::invalid_parameter, "k_max must be at least 5");
    auto rows = region_rows(k_max);
    auto pairs = enumerate_region(k_max);
    int failures = 0;
    auto paths = nlohmann::json::array();
    for (auto& p : pairs) {
        try {
            paths.push_back(path_to_json(derivation_path(p)));
        } catch (const Error& e) {
            ++failures;
            paths.push_back({{"end", {p.g, p.k}}, {"error", e.what()}});
        }
    }
    auto ratios = nlohmann::json::array();
    for (int k1 = 2; 2 * k1 + 1 <= k_max; ++k1) {
        auto r = asymptotic_ratio(k1);
        ratios.push_back({{"k1", k1}, {"num", r.numerator()}, {"den", r.denominator()},
                          {"value", static_cast<double>(r.numerator()) / static_cast<double>(r.denominator())}});
    }
    if (!csv_dir.empty()) {
        write_file(fs::path(csv_dir) / "region.csv", region_csv(k_max));
        write_file(fs::path(csv_dir) / "paths.json", paths.dump(1) + "\n");
    }
    if (json) {
        auto jr = nlohmann::json::array();
        for (auto& r : rows) jr.push_back({{"k", r.k}, {"g_min", r.g_min}, {"g_max", r.g_max}, {"count", r.count}});
        std::cout << nlohmann::json{{"rows", jr}, {"pairs", pairs.size()}, {"path_failures", failures}, {"ratios", ratios}}.dump(2)
                  << "\n";
    } else {
        std::cout << region_csv(k_max);
        std::cout << "pairs " << pairs.size() << ", path failures " << failures << "\n";
        std::cout << "k1,g_min/k1^2\n";
        for (auto& r : ratios)
            std::cout << r["k1"].get<int>() << ',' << r["num"].get<long long>() << '/' << r["den"].get<long long>() << '\n';
    }
    return failures ? kFail : kPass;
}

int cmd_export(int g, int k, const std::string& out, const std::string& csv_dir) {
    auto l = build_pair(g, k);
    auto j = ledger_to_json(l);
    if (out.empty()) std::cout << j.dump(1) << "\n";
    else write_file(out, j.dump(1) + "\n");
    if (!csv_dir.empty()) {
        write_file(fs::path(csv_dir) / "table.csv", table_to_csv(l.table));
        write_file(fs::path(csv_dir) / "fiber_bounds.json", fiber_report_to_json(account_dimension(l)).dump(1) + "\n");
    }
    return kPass;
}

nlohmann::json lstab_one(const LChain& c, int cap, bool force) {
    nlohmann::json j{{"n", c.n()}, {"f4", c.has_f4()}};
    if (c.n() > cap && !force) throw Error(ErrorCode::too_large, "chain has " + std::to_string(c.n()) + " components, cap " + std::to_string(cap) + " (use --force)");
    auto b = is_l_semistable_bruteforce(c, force ? std::max(cap, c.n()) : cap);
    j["semistable"] = b.semistable;
    if (b.witness) {
        j["witness"] = profile_to_json(*b.witness);
        j["witness"]["chi"] = chi_rank1(c, *b.witness);
    }
    try {
        bool s = single_interval_criterion(c);
        j["single_interval"] = s;
        j["agree"] = s == b.semistable;
    } catch (const Error& e) {
        j["single_interval"] = nullptr;
        j["single_interval_note"] = e.what();
    }
    try {
        auto mu = mu_reference_check(c);
        j["mu_reference_semistable"] = mu.semistable;
        j["mu_reference_chi"] = mu.chi;
    } catch (const Error&) {
    }
    return j;
}

LChain random_chain(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 8), bit(0, 1), cls(0, 2);
    int n = nd(rng), unst = 0;
    std::vector<int> f;
    std::vector<LClass> c;
    for (int j = 0; j < n; ++j) {
        int k = cls(rng);
        if (k == 1 && unst == 2) k = 0;
        unst += k == 1;
        int hi = bit(rng);
        f.push_back(k == 1 ? 1 + 2 * hi : 2 + 2 * hi);
        c.push_back(k == 0 ? LClass::semistable : k == 1 ? LClass::unstable : LClass::dbl);
    }
    auto ch = make_lchain(f, c);
    for (int t = 1; t < n; ++t)
        for (int l = 1; l <= 2; ++l)
            for (int lp = 1; lp <= 2; ++lp)
                if (bit(rng) && bit(rng)) ch.set_glued(t, l, lp);
    return ch;
}

int cmd_lstab(const std::string& file, int random_count, unsigned seed, int cap, bool force, bool json) {
    if (random_count > 0) {
        std::mt19937 rng(seed);
        long long agree = 0, twist_ok = 0;
        for (int i = 0; i < random_count; ++i) {
            auto c = random_chain(rng);
            bool slow = is_l_semistable_bruteforce(c, cap).semistable;
            agree += single_interval_criterion(c) == slow;
            bool tw = true;
            if (c.n() > 1) {
                std::uniform_int_distribution<int> node(1, c.n() - 1), amt(-5, 5);
                tw = is_l_semistable_bruteforce(twist_equivalence(c, node(rng), amt(rng)), cap).semistable == slow;
            }
            twist_ok += tw;
        }
        bool ok = agree == random_count && twist_ok == random_count;
        if (json)
            std::cout << nlohmann::json{{"chains", random_count}, {"seed", seed}, {"agree", agree}, {"twist_invariant", twist_ok}, {"ok", ok}}.dump(2) << "\n";
        else
            std::cout << "chains " << random_count << " seed " << seed << ": single-interval/brute-force agree " << agree << ", twist invariant "
                      << twist_ok << (ok ? "  PASS" : "  FAIL") << "\n";
        return ok ? kPass : kFail;
    }
    if (file.empty()) throw CLI::ValidationError("lstab needs a chain file or --random");
    LChain c;
    try {
        c = lchain_from_json(read_json(file));
    } catch (const Error& e) {
        throw IOError(file + ": " + e.what());
    }
    auto j = lstab_one(c, cap, force);
    bool ok = !j.contains("agree") || j["agree"].get<bool>();
    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "components " << c.n() << (c.has_f4() ? " (contains f=4)" : "") << "\n";
        std::cout << "l-semistable (brute force): " << (j["semistable"].get<bool>() ? "true" : "false") << "\n";
        if (j.contains("witness")) std::cout << "witness: " << j["witness"].dump() << "\n";
        if (j["single_interval"].is_null()) std::cout << "single-interval criterion: not applicable (" << j["single_interval_note"].get<std::string>() << ")\n";
        else std::cout << "single-interval criterion: " << (j["single_interval"].get<bool>() ? "true" : "false") << (ok ? " (agrees)" : " (DISAGREES)") << "\n";
        if (j.contains("mu_reference_semistable"))
            std::cout << "mu-reference semistable: " << (j["mu_reference_semistable"].get<bool>() ? "true" : "false") << " (max chi "
                      << j["mu_reference_chi"].get<long long>() << ")\n";
    }
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bnchain: vanishing tables, constructions and dimension counts for rank-two limit linear series on elliptic chains"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    int g = 0, k = 0, k_max = 0, cap = 12, random_count = 0;
    unsigned seed = 1;
    bool force = false;
    std::string ledger, csv_dir, out, file;

    auto* verify = app.add_subcommand("verify", "run the full check pipeline on a pair or a ledger file");
    verify->add_option("g", g, "genus");
    verify->add_option("k", k, "dimension");
    verify->add_option("--ledger", ledger, "ledger JSON file; verified as-is");

    auto* account = app.add_subcommand("account", "per-node dimension bounds for a pair");
    account->add_option("g", g)->required();
    account->add_option("k", k)->required();
    account->add_option("--csv", csv_dir, "directory for fiber_bounds.csv");

    auto* region = app.add_subcommand("region", "covered pairs up to k_max, with paths");
    region->add_option("k_max", k_max)->required();
    region->add_option("--csv", csv_dir, "directory for region.csv and paths.json");

    auto* exp = app.add_subcommand("export", "write the ledger JSON for a pair");
    exp->add_option("g", g)->required();
    exp->add_option("k", k)->required();
    exp->add_option("--out", out, "output file (stdout when omitted)");
    exp->add_option("--csv", csv_dir, "directory for table.csv and fiber_bounds.json");

    auto* lstab = app.add_subcommand("lstab", "l-semistability of a chain file, or a random batch");
    lstab->add_option("file", file, "chain JSON");
    lstab->add_option("--random", random_count, "number of random chains");
    lstab->add_option("--seed", seed, "seed for --random");
    lstab->add_option("--cap", cap, "largest chain for the brute force");
    lstab->add_flag("--force", force, "run the brute force past the cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    try {
        if (*verify) {
            if (ledger.empty() && (verify->count("g") == 0 || verify->count("k") == 0))
                throw CLI::ValidationError("verify needs g k or --ledger FILE");
            return cmd_verify(g, k, ledger, json);
        }
        if (*account) return cmd_account(g, k, csv_dir, json);
        if (*region) return cmd_region(k_max, csv_dir, json);
        if (*exp) return cmd_export(g, k, out, csv_dir);
        if (*lstab) return cmd_lstab(file, random_count, seed, cap, force, json);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IOError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIO;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::invalid_parameter || e.code() == ErrorCode::too_large ? kUsage : kFail;
    }
    return kUsage;
}
