// SPDX-License-Identifier: Apache-2.0
#include "bnchain/vanishing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bnchain/error.hpp"
#include "bnchain/numerics.hpp"

namespace bnchain {

namespace {

int count_of(const std::vector<int>& s, int x) {
    return static_cast<int>(std::count(s.begin(), s.end(), x));
}

bool repeated(const std::vector<int>& s, int i) { return count_of(s, s[i]) > 1; }

int first_index(const std::vector<int>& a, int x) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == x) return static_cast<int>(i);
    return -1;
}

std::string seq_str(const std::vector<int>& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
    return os.str();
}

void check_shape(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() || a.empty())
        throw Error(ErrorCode::invalid_parameter, "sequences must be non-empty and of equal length");
}

// every integer at most twice in each sequence
void check_repetition(const std::vector<int>& a, const std::vector<int>& b,
                      std::vector<Violation>& v) {
    for (const auto* s : {&a, &b}) {
        std::map<int, int> cnt;
        for (int x : *s) ++cnt[x];
        for (auto [x, c] : cnt)
            if (c > 2)
                v.push_back({"repetition", 0, 0,
                             std::string(s == &a ? "a" : "b") + " repeats " + std::to_string(x) +
                                 " " + std::to_string(c) + " times"});
    }
}

}  // namespace

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::semistable: return "semistable";
        case Stability::unstable: return "unstable";
        case Stability::dbl: return "double";
    }
    return "?";
}

Stability parse_stability(const std::string& s) {
    if (s == "semistable") return Stability::semistable;
    if (s == "unstable") return Stability::unstable;
    if (s == "double") return Stability::dbl;
    throw Error(ErrorCode::parse_error, "unknown stability '" + s + "'");
}

Stability BundleSpec::stability() const {
    int d1 = l1 + r1, d2 = l2 + r2;
    if (std::abs(d1 - d2) == 1) return Stability::unstable;
    if (d1 != d2) throw Error(ErrorCode::invalid_parameter, "summand degrees differ by more than one: " + str());
    if (l1 == l2 && r1 == r2) return Stability::dbl;
    return Stability::semistable;
}

BundleSpec BundleSpec::normalized() const {
    if (std::pair(l1, r1) <= std::pair(l2, r2)) return *this;
    return BundleSpec{l2, r2, l1, r1};
}

bool BundleSpec::same_as(const BundleSpec& o) const { return normalized() == o.normalized(); }

std::string BundleSpec::str() const {
    std::ostringstream os;
    os << "O(" << l1 << "," << r1 << ")+O(" << l2 << "," << r2 << ")";
    return os.str();
}

std::string Violation::str() const {
    std::ostringstream os;
    os << code;
    if (row) os << " row " << row;
    if (col) os << " at " << col;
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

std::string format_violations(const std::vector<Violation>& v, std::size_t limit) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) os << (i ? "; " : "") << v[i].str();
    if (v.size() > limit) os << "; ... (" << v.size() << " total)";
    return os.str();
}

int common_lower_bound(const std::vector<int>& a, const std::vector<int>& b, int t) {
    check_shape(a, b);
    if (t < 1 || t > static_cast<int>(a.size()))
        throw Error(ErrorCode::invalid_parameter, "index out of range");
    int at = a[t - 1], bt = b[t - 1], c = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] >= at && b[i] >= bt) ++c;
    return c;
}

SemistableBasisResult check_semistable_basis(const std::vector<int>& a, const std::vector<int>& b, int d) {
    check_shape(a, b);
    SemistableBasisResult r;
    int n = static_cast<int>(a.size());
    std::vector<int> sp;
    for (int i = 0; i < n; ++i) {
        int s = a[i] + b[i];
        if (s < d - 1 || s > d)
            r.violations.push_back({"sum-range", i + 1, 0, "a+b=" + std::to_string(s) + ", d=" + std::to_string(d)});
        if (s == d) sp.push_back(i);
    }
    if (sp.size() != 2)
        r.violations.push_back({"special-count", 0, 0, std::to_string(sp.size()) + " rows with a+b=d"});
    check_repetition(a, b, r.violations);
    if (sp.size() == 2) {
        int i1 = sp[0], i2 = sp[1];
        r.i1 = i1 + 1;
        r.i2 = i2 + 1;
        for (int i = 0; i < n; ++i)
            if (i != i1 && i != i2 && a[i] == a[i1] && b[i] == b[i2])
                r.violations.push_back({"cross-pair", i + 1, 0, "a_i=a_i1 and b_i=b_i2"});
    }
    return r;
}

UnstableBasisResult check_unstable_basis(const std::vector<int>& a, const std::vector<int>& b, int d) {
    check_shape(a, b);
    UnstableBasisResult r;
    int n = static_cast<int>(a.size());
    std::vector<int> ells;
    for (int i = 0; i < n; ++i) {
        int s = a[i] + b[i];
        if (s < d - 1 || s > d + 1)
            r.violations.push_back({"sum-range", i + 1, 0, "a+b=" + std::to_string(s) + ", d=" + std::to_string(d)});
        if (s == d + 1) ells.push_back(i);
    }
    if (ells.size() != 1)
        r.violations.push_back({"ell-count", 0, 0, std::to_string(ells.size()) + " rows with a+b=d+1"});
    int i0 = -1;
    for (int i = 0; i + 1 < n; ++i)
        if (a[i] == a[i + 1] && a[i] + b[i] == d && a[i + 1] + b[i + 1] == d) {
            i0 = i;
            break;
        }
    if (i0 < 0) r.violations.push_back({"istar-missing", 0, 0, "no repeated pair with a+b=d"});
    check_repetition(a, b, r.violations);

    std::map<std::pair<int, int>, int> pairs;
    for (int i = 0; i < n; ++i) ++pairs[{a[i], b[i]}];
    for (auto [p, c] : pairs)
        if (c > 1 && (i0 < 0 || p != std::pair(a[i0], b[i0])))
            r.violations.push_back({"pair-multiplicity", 0, 0,
                                    "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ") x" + std::to_string(c)});

    int lo = std::min(0, *std::min_element(a.begin(), a.end()));
    int hi = std::max(d, *std::max_element(a.begin(), a.end()));
    for (int x = lo; x <= hi; ++x) {
        if (i0 >= 0 && x == a[i0] && d - x == b[i0]) continue;
        int c = 0;
        for (int i = 0; i < n; ++i)
            if (a[i] >= x && b[i] >= d - x) ++c;
        if (c > 1)
            r.violations.push_back({"dominance", 0, 0, "x=" + std::to_string(x) + " count " + std::to_string(c)});
    }
    for (int i = 0; i + 1 < n; ++i)
        if (a[i] + b[i] == d - 1 && a[i + 1] + b[i + 1] == d - 1 && a[i + 1] == a[i] + 1 &&
            !repeated(a, i) && !repeated(a, i + 1) && !repeated(b, i) && !repeated(b, i + 1))
            r.violations.push_back({"adjacent-low", i + 1, 0, "two non-repeated rows with a+b=d-1"});

    if (ells.size() == 1) r.ell = ells[0] + 1;
    if (i0 >= 0) r.istar = i0 + 1;
    for (int i = 0; i < n; ++i)
        if (!repeated(a, i) && a[i] + b[i] == d && (ells.size() != 1 || i != ells[0]))
            r.tau.push_back(i + 1);
    return r;
}

BundleSpec infer_bundle(const std::vector<int>& a, const std::vector<int>& b, int deg) {
    check_shape(a, b);
    int min_sum = a[0] + b[0];
    for (std::size_t i = 0; i < a.size(); ++i) min_sum = std::min(min_sum, a[i] + b[i]);
    if (deg % 2 == 0) {
        int d = deg / 2;
        if (min_sum < d - 1) throw Error(ErrorCode::infeasible_degree, "degree " + std::to_string(deg) + " below the vanishing data");
        auto r = check_semistable_basis(a, b, d);
        if (!r.ok()) throw Error(ErrorCode::feasibility, format_violations(r.violations));
        int x = a[r.i1 - 1], y = a[r.i2 - 1];
        return BundleSpec{x, d - x, y, d - y};
    }
    int d = (deg - 1) / 2;
    if (min_sum < d - 1) throw Error(ErrorCode::infeasible_degree, "degree " + std::to_string(deg) + " below the vanishing data");
    auto r = check_unstable_basis(a, b, d);
    if (!r.ok()) throw Error(ErrorCode::feasibility, format_violations(r.violations));
    int x = a[r.ell - 1], y = a[r.istar - 1];
    return BundleSpec{x, d + 1 - x, y, d - y};
}

std::vector<int> decode_concise(const ConciseTriple& t, int d) {
    const auto& a = t.a;
    const auto& e = t.bundle;
    int n = static_cast<int>(a.size());
    int deg = e.degree();
    std::vector<int> b(n);
    auto locate = [&](int x) {
        int i = first_index(a, x);
        if (i < 0)
            throw Error(ErrorCode::decode_mismatch, "twist " + std::to_string(x) + " not in a " + seq_str(a));
        return i;
    };
    Stability st = e.stability();
    if (st != Stability::unstable) {
        if (deg != 2 * d) throw Error(ErrorCode::decode_mismatch, "degree " + std::to_string(deg) + " != 2d");
        int i1 = locate(e.l1), i2 = locate(e.l2);
        if (i1 == i2) {
            if (i1 + 1 >= n || a[i1 + 1] != a[i1])
                throw Error(ErrorCode::decode_mismatch, "double bundle needs a repeated pair at " + std::to_string(e.l1));
            i2 = i1 + 1;
        }
        for (int i = 0; i < n; ++i) b[i] = (i == i1 || i == i2) ? d - a[i] : d - a[i] - 1;
        return b;
    }
    if (deg != 2 * d + 1) throw Error(ErrorCode::decode_mismatch, "degree " + std::to_string(deg) + " != 2d+1");
    int ldest = e.l1, lsub = e.l2;
    if (e.l1 + e.r1 != d + 1) std::swap(ldest, lsub);
    int ell = locate(ldest), ist = locate(lsub);
    std::set<int> tau(t.tau.begin(), t.tau.end());
    for (int x : tau) {
        if (x < 1 || x > n) throw Error(ErrorCode::decode_mismatch, "tau index out of range");
        if (repeated(a, x - 1))
            throw Error(ErrorCode::decode_mismatch, "tau points at repeated row " + std::to_string(x));
    }
    for (int i = 0; i < n; ++i) {
        if (i == ell) b[i] = d + 1 - a[i];
        else if (tau.count(i + 1) || (i + 1 < n && a[i] == a[i + 1]) || i == ist + 1) b[i] = d - a[i];
        else b[i] = d - 1 - a[i];
    }
    return b;
}

ConciseTriple encode_concise(const std::vector<int>& a, const std::vector<int>& b, int deg) {
    ConciseTriple t;
    t.bundle = infer_bundle(a, b, deg);
    t.a = a;
    if (deg % 2) t.tau = check_unstable_basis(a, b, (deg - 1) / 2).tau;
    return t;
}

const std::vector<int>& VanishingTable::col(int c) const {
    if (c == 0) return left;
    if (c == 2 * g - 1) return right;
    if (c < 0 || c > 2 * g - 1) throw Error(ErrorCode::invalid_parameter, "column out of range");
    return matrix[c - 1];
}

std::vector<int>& VanishingTable::col(int c) {
    return const_cast<std::vector<int>&>(static_cast<const VanishingTable&>(*this).col(c));
}

VanishingTable make_table(int g, int k, std::vector<int> d) {
    VanishingTable t;
    t.g = g;
    t.k = k;
    t.d = std::move(d);
    t.left = boundary_sequence(k);
    t.right = boundary_sequence_rev(k);
    t.matrix.assign(2 * g - 2, std::vector<int>(k, 0));
    return t;
}

std::vector<int> odd_nodes(const std::vector<int>& d) {
    std::vector<int> out;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] % 2) out.push_back(static_cast<int>(j) + 1);
    return out;
}

StandardReport check_standard(const VanishingTable& t, StandardMode mode) {
    StandardReport rep;
    auto& v = rep.violations;
    const int g = t.g, k = t.k;
    if (static_cast<int>(t.d.size()) != g) {
        v.push_back({"degree-length", 0, 0, "d has " + std::to_string(t.d.size()) + " entries"});
        return rep;
    }
    if (static_cast<int>(t.matrix.size()) != 2 * g - 2) {
        v.push_back({"column-count", 0, 0, std::to_string(t.matrix.size()) + " columns"});
        return rep;
    }
    for (int c = 0; c < 2 * g; ++c)
        if (static_cast<int>(t.col(c).size()) != k) {
            v.push_back({"column-length", 0, c, ""});
            return rep;
        }
    auto odd = odd_nodes(t.d);
    for (int j = 1; j <= g; ++j) {
        int dj = t.d[j - 1];
        if (dj < 2 * g - 3 || dj > 2 * g - 1) v.push_back({"degree-value", 0, j, std::to_string(dj)});
    }
    for (std::size_t s = 0; s < odd.size(); ++s) {
        int want = s % 2 == 0 ? 2 * g - 1 : 2 * g - 3;
        if (t.d[odd[s] - 1] != want) v.push_back({"degree-alternation", 0, odd[s], ""});
    }
    if (!odd.empty() && odd[0] != 2) v.push_back({"degree-first-odd", 0, odd[0], "j_1 must be 2"});
    if (odd.size() % 2) v.push_back({"degree-odd-count", 0, 0, "odd number of odd degrees"});
    if (t.d[0] != 2 * g - 2 || t.d[g - 1] != 2 * g - 2) v.push_back({"degree-ends", 0, 0, ""});

    // (1) complementarity
    for (int j = 1; j < g; ++j)
        for (int i = 0; i < k; ++i)
            if (t.col(2 * j - 1)[i] + t.col(2 * j)[i] != g - 1)
                v.push_back({"c1-complementarity", i + 1, j, ""});
    // (2)/(3) with monotonicity and sign
    for (int j = 1; j <= g; ++j) {
        const auto& a = t.a_of(j);
        const auto& b = t.b_of(j);
        for (int i = 0; i + 1 < k; ++i) {
            if (a[i] > a[i + 1]) v.push_back({"monotone-a", i + 1, j, ""});
            if (b[i] < b[i + 1]) v.push_back({"monotone-b", i + 1, j, ""});
        }
        for (int i = 0; i < k; ++i)
            if (a[i] < 0 || b[i] < 0) v.push_back({"negative", i + 1, j, ""});
        int dj = t.d[j - 1];
        std::vector<Violation> w;
        if (dj % 2 == 0) w = check_semistable_basis(a, b, dj / 2).violations;
        else w = check_unstable_basis(a, b, (dj - 1) / 2).violations;
        for (auto& x : w) {
            x.code = (dj % 2 ? "c3-" : "c2-") + x.code;
            x.col = j;
            v.push_back(x);
        }
    }
    if (mode == StandardMode::weak) return rep;

    const int k1 = k / 2;
    if (g >= 2 && t.col(2)[k - 1] + t.col(3)[k - 1] != g - 1) v.push_back({"c4", k, 2, ""});
    for (std::size_t s = 0; s < odd.size(); ++s) {
        int tt = static_cast<int>(s) + 1, jt = odd[s];
        const auto& a = t.a_of(jt);
        const auto& b = t.b_of(jt);
        int ak = a[k - 1], bk = b[k - 1];
        if (ak > k1 + jt - 1) v.push_back({"c5-bound", k, jt, ""});
        if (ak == k1 + jt - 2 && !(tt % 2 == 0 || ak + bk == (t.d[jt - 1] - 1) / 2))
            v.push_back({"c5-low", k, jt, ""});
        if (ak == k1 + jt - 1 && !(tt % 2 == 1 && a[k - 2] < ak)) v.push_back({"c5-high", k, jt, ""});
        if (bk == g - 1 - k1 - jt && s + 1 < odd.size()) {
            for (int j = jt + 1; j < odd[s + 1]; ++j)
                if (t.a_of(j)[k - 1] + t.b_of(j)[k - 1] != g - 2) v.push_back({"c6", k, j, ""});
        }
    }
    return rep;
}

std::string table_to_csv(const VanishingTable& t) {
    std::ostringstream os;
    for (int i = 0; i < t.k; ++i) {
        for (int c = 1; c <= 2 * t.g - 2; ++c) os << (c > 1 ? "," : "") << t.col(c)[i];
        os << "\n";
    }
    return os.str();
}

VanishingTable table_from_csv(const std::string& csv, const std::vector<int>& d) {
    std::vector<std::vector<int>> rows;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<int> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stoi(cell, &pos));
            } catch (const std::exception&) {
                throw Error(ErrorCode::parse_error, "bad CSV cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    int g = static_cast<int>(d.size());
    if (rows.empty()) throw Error(ErrorCode::parse_error, "empty CSV");
    for (auto& r : rows)
        if (static_cast<int>(r.size()) != 2 * g - 2)
            throw Error(ErrorCode::parse_error, "CSV row width does not match 2g-2");
    auto t = make_table(g, static_cast<int>(rows.size()), d);
    for (int i = 0; i < t.k; ++i)
        for (int c = 1; c <= 2 * g - 2; ++c) t.col(c)[i] = rows[i][c - 1];
    return t;
}

nlohmann::json table_to_json(const VanishingTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < t.k; ++i) {
        std::vector<int> r;
        for (int c = 1; c <= 2 * t.g - 2; ++c) r.push_back(t.col(c)[i]);
        rows.push_back(r);
    }
    return {{"g", t.g}, {"k", t.k}, {"d_vec", t.d}, {"matrix", rows},
            {"boundaries", {{"left", t.left}, {"right", t.right}}}};
}

VanishingTable table_from_json(const nlohmann::json& j) {
    try {
        VanishingTable t;
        t.g = j.at("g").get<int>();
        t.k = j.at("k").get<int>();
        t.d = j.at("d_vec").get<std::vector<int>>();
        auto rows = j.at("matrix").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(rows.size()) != t.k) throw Error(ErrorCode::parse_error, "matrix row count != k");
        t.matrix.assign(2 * t.g - 2, std::vector<int>(t.k));
        for (int i = 0; i < t.k; ++i) {
            if (static_cast<int>(rows[i].size()) != 2 * t.g - 2)
                throw Error(ErrorCode::parse_error, "matrix row width != 2g-2");
            for (int c = 0; c < 2 * t.g - 2; ++c) t.matrix[c][i] = rows[i][c];
        }
        if (j.contains("boundaries")) {
            t.left = j["boundaries"].at("left").get<std::vector<int>>();
            t.right = j["boundaries"].at("right").get<std::vector<int>>();
        } else {
            t.left = boundary_sequence(t.k);
            t.right = boundary_sequence_rev(t.k);
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

}  // namespace bnchain
