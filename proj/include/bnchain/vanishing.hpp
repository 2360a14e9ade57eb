// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace bnchain {

enum class Stability { semistable, unstable, dbl };
const char* stability_name(Stability s);
Stability parse_stability(const std::string& s);

// O(l1 P_j + r1 P_{j+1}) + O(l2 P_j + r2 P_{j+1})
struct BundleSpec {
    int l1 = 0, r1 = 0, l2 = 0, r2 = 0;

    int degree() const { return l1 + r1 + l2 + r2; }
    // throws invalid_parameter when the summand degrees differ by more than one
    Stability stability() const;
    // summands sorted, so equality ignores order
    BundleSpec normalized() const;
    bool same_as(const BundleSpec& o) const;
    std::string str() const;
    bool operator==(const BundleSpec&) const = default;
};

struct Violation {
    std::string code;
    int row = 0;  // 1-based, 0 when not row-specific
    int col = 0;  // column or component, 0 when not applicable
    std::string detail;
    std::string str() const;
};

std::string format_violations(const std::vector<Violation>& v, std::size_t limit = 8);

int common_lower_bound(const std::vector<int>& a, const std::vector<int>& b, int t);

struct SemistableBasisResult {
    std::vector<Violation> violations;
    int i1 = 0, i2 = 0;  // 1-based
    bool ok() const { return violations.empty(); }
};
SemistableBasisResult check_semistable_basis(const std::vector<int>& a, const std::vector<int>& b, int d);

struct UnstableBasisResult {
    std::vector<Violation> violations;
    int ell = 0, istar = 0;  // 1-based
    std::vector<int> tau;    // maximal admissible set
    bool ok() const { return violations.empty(); }
};
UnstableBasisResult check_unstable_basis(const std::vector<int>& a, const std::vector<int>& b, int d);

BundleSpec infer_bundle(const std::vector<int>& a, const std::vector<int>& b, int deg);

struct ConciseTriple {
    BundleSpec bundle;
    std::vector<int> a;
    std::vector<int> tau;  // 1-based rows
};
std::vector<int> decode_concise(const ConciseTriple& t, int d);
ConciseTriple encode_concise(const std::vector<int>& a, const std::vector<int>& b, int deg);

struct VanishingTable {
    int g = 0, k = 0;
    std::vector<int> d;                     // length g
    std::vector<int> left, right;           // virtual columns 0 and 2g-1
    std::vector<std::vector<int>> matrix;   // columns 1..2g-2, stored at matrix[c-1]

    int num_cols() const { return 2 * g; }
    const std::vector<int>& col(int c) const;
    std::vector<int>& col(int c);
    // component j (1-based) uses col(2j-2), col(2j-1)
    const std::vector<int>& a_of(int j) const { return col(2 * j - 2); }
    const std::vector<int>& b_of(int j) const { return col(2 * j - 1); }
    bool operator==(const VanishingTable&) const = default;
};

// g components, k rows, all-zero matrix, standard boundaries
VanishingTable make_table(int g, int k, std::vector<int> d);

enum class StandardMode { full, weak };
struct StandardReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};
StandardReport check_standard(const VanishingTable& t, StandardMode mode = StandardMode::full);

// odd entries j_1 < ... < j_2T of d (1-based)
std::vector<int> odd_nodes(const std::vector<int>& d);

std::string table_to_csv(const VanishingTable& t);
// rows of 2g-2 integers; boundaries set to a(k), a(k)^rev
VanishingTable table_from_csv(const std::string& csv, const std::vector<int>& d);
nlohmann::json table_to_json(const VanishingTable& t);
VanishingTable table_from_json(const nlohmann::json& j);

}  // namespace bnchain
