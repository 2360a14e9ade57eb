// SPDX-License-Identifier: Apache-2.0
#include "bnchain/lstab.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <sstream>

#include "bnchain/error.hpp"

namespace bnchain {

namespace {

constexpr int kMaxN = 32;

struct Kernel {
    const LChain& c;
    int n;
    bool prune;
    int target;  // sum f
    std::array<int, kMaxN + 1> rest{};  // sum of 2*eps_max from j on
    std::array<int, kMaxN> start{}, choice{};
    long long visited = 0;
    bool found = false;

    Kernel(const LChain& ch, bool pr) : c(ch), n(ch.n()), prune(pr), target(ch.sum_f()) {
        rest[n] = 0;
        for (int j = n - 1; j >= 0; --j) rest[j] = rest[j + 1] + 2 * c.comps[j].eps_max();
    }

    bool joins(int j, int prev, int cur) const {
        if (prev == 0 || cur == 0) return true;
        if (c.comps[j - 1].dbl || c.comps[j].dbl) return true;
        return c.glued(j, prev, cur);
    }

    void dfs(int j, int prev, int score) {
        if (found) return;
        ++visited;
        if (j == n) {
            if (score > target) found = true;
            return;
        }
        const auto& e = c.comps[j];
        int lines = e.dbl ? 1 : (e.x1 < e.x2 ? 1 : 2);
        for (int brk = 0; brk <= (j > 0 ? 1 : 0); ++brk) {
            for (int ch = 0; ch <= lines; ++ch) {
                // the single maximal line of an unstable component is line 2
                int line = ch == 0 ? 0 : (e.x1 < e.x2 ? 2 : ch);
                if (j > 0 && !brk && !joins(j, prev, line)) continue;
                int s = score - 2 * brk + 2 * (line ? e.eps_max() : e.eps_low());
                if (prune && s + rest[j + 1] <= target) continue;
                start[j] = brk || j == 0;
                choice[j] = line;
                dfs(j + 1, line, s);
                if (found) return;
            }
        }
    }
};

int line_bit(int l, int lp) { return 2 * (l - 1) + (lp - 1); }

}  // namespace

LClass LComponent::cls() const {
    if (x1 < x2) return LClass::unstable;
    return dbl ? LClass::dbl : LClass::semistable;
}

int LComponent::max_lines() const {
    switch (cls()) {
        case LClass::semistable: return 2;
        case LClass::unstable: return 1;
        case LClass::dbl: return 0;
    }
    return 0;
}

int LChain::sum_f() const {
    int s = 0;
    for (auto& e : comps) s += e.f();
    return s;
}

int LChain::unstable_count() const {
    return static_cast<int>(std::count_if(comps.begin(), comps.end(),
                                          [](auto& e) { return e.cls() == LClass::unstable; }));
}

bool LChain::in_standard_form() const {
    for (auto& e : comps)
        if (e.f() < 1 || e.f() > 4 || e.x2 - e.x1 > 1 || e.x1 > e.x2) return false;
    return true;
}

bool LChain::has_f4() const {
    return std::any_of(comps.begin(), comps.end(), [](auto& e) { return e.f() == 4; });
}

long long LChain::chi_total() const { return 2LL * n() * A + sum_f() - 2LL * (n() - 1); }

bool LChain::glued(int node, int l, int lp) const {
    if (node < 1 || node > static_cast<int>(glue.size())) return false;
    return glue[node - 1] >> line_bit(l, lp) & 1;
}

void LChain::set_glued(int node, int l, int lp, bool on) {
    if (node < 1 || node >= n() || l < 1 || l > 2 || lp < 1 || lp > 2)
        throw Error(ErrorCode::invalid_parameter, "gluing entry out of range");
    if (glue.size() < static_cast<std::size_t>(n() - 1)) glue.resize(n() - 1, 0);
    if (on) glue[node - 1] |= static_cast<std::uint8_t>(1 << line_bit(l, lp));
    else glue[node - 1] &= static_cast<std::uint8_t>(~(1 << line_bit(l, lp)));
}

LChain make_lchain(const std::vector<int>& f, const std::vector<LClass>& cls, int A) {
    if (f.size() != cls.size()) throw Error(ErrorCode::invalid_parameter, "f and stability lengths differ");
    LChain c;
    c.A = A;
    for (std::size_t j = 0; j < f.size(); ++j) {
        int x = f[j];
        if (x < 1 || x > 4) throw Error(ErrorCode::invalid_parameter, "f must lie in 1..4");
        bool odd = x % 2 != 0;
        if (odd != (cls[j] == LClass::unstable))
            throw Error(ErrorCode::invalid_parameter, "odd f is exactly the unstable class");
        if (odd) c.comps.push_back({(x - 1) / 2, (x + 1) / 2, false});
        else c.comps.push_back({x / 2, x / 2, cls[j] == LClass::dbl});
    }
    c.glue.assign(f.empty() ? 0 : f.size() - 1, 0);
    return c;
}

void check_profile(const LChain& c, const SubsheafProfile& p) {
    const int n = c.n();
    auto bad = [](const std::string& s) { throw Error(ErrorCode::invalid_profile, s); };
    if (static_cast<int>(p.choice.size()) != n || static_cast<int>(p.eps.size()) != n) bad("profile length differs from chain");
    if (p.starts.empty() || p.starts[0] != 0) bad("first interval must start at component 1");
    for (std::size_t i = 1; i < p.starts.size(); ++i)
        if (p.starts[i] <= p.starts[i - 1] || p.starts[i] >= n) bad("interval starts must increase inside the chain");
    for (int j = 0; j < n; ++j) {
        const auto& e = c.comps[j];
        int ch = p.choice[j];
        if (ch == 0) {
            if (p.eps[j] != e.eps_low()) bad("eps at component " + std::to_string(j + 1) + " is not the non-maximal value");
            continue;
        }
        if (ch < 1 || ch > 2) bad("line choice must be 0, 1 or 2");
        if (e.cls() == LClass::unstable && ch != 2) bad("unstable component: maximal line is line 2");
        if (e.cls() == LClass::dbl && ch != 1) bad("double component: maximal choice is written as 1");
        if (p.eps[j] != e.eps_max()) bad("eps at component " + std::to_string(j + 1) + " is not the maximal value");
        if (j > 0 && p.choice[j - 1] != 0 &&
            !std::binary_search(p.starts.begin(), p.starts.end(), j) && !c.comps[j - 1].dbl && !e.dbl &&
            !c.glued(j, p.choice[j - 1], ch))
            bad("lines at node " + std::to_string(j) + " are not glued");
    }
}

long long chi_rank1(const LChain& c, const SubsheafProfile& p) {
    check_profile(c, p);
    long long s = 0;
    for (int e : p.eps) s += e;
    return static_cast<long long>(c.n()) * c.A + s - p.m() - c.n() + 2;
}

long long chi_rank1_pieces(const LChain& c, const SubsheafProfile& p) {
    check_profile(c, p);
    const int n = c.n(), m = p.m();
    long long total = 0;
    for (int i = 0; i < m; ++i) {
        int lo = p.starts[i], hi = i + 1 < m ? p.starts[i + 1] : n;
        int mi = hi - lo;
        int nu = m == 1 ? 0 : (i == 0 || i == m - 1 ? 1 : 2);
        long long chi = 0;
        for (int j = lo; j < hi; ++j) chi += c.A + p.eps[j];
        total += chi - (mi - 1) - nu;
    }
    return total;
}

int profile_node_count(const SubsheafProfile& p, int n) {
    const int m = p.m();
    int s = 0;
    for (int i = 0; i < m; ++i) {
        int lo = p.starts[i], hi = i + 1 < m ? p.starts[i + 1] : n;
        int nu = m == 1 ? 0 : (i == 0 || i == m - 1 ? 1 : 2);
        s += hi - lo - 1 + nu;
    }
    return s;
}

bool profile_satisfies(const LChain& c, const SubsheafProfile& p) {
    check_profile(c, p);
    long long s = 0;
    for (int e : p.eps) s += 2 * e;
    return s - 2LL * (p.m() - 1) <= c.sum_f();
}

LStabResult is_l_semistable_bruteforce(const LChain& c, int cap, bool prune) {
    if (c.n() > cap || c.n() > kMaxN)
        throw Error(ErrorCode::too_large, "chain has " + std::to_string(c.n()) + " components, cap " + std::to_string(std::min(cap, kMaxN)));
    LStabResult r;
    if (c.n() == 0) return r;
    Kernel k(c, prune);
    k.dfs(0, 0, 0);
    r.visited = k.visited;
    r.semistable = !k.found;
    if (k.found) {
        SubsheafProfile p;
        for (int j = 0; j < c.n(); ++j) {
            if (k.start[j]) p.starts.push_back(j);
            p.choice.push_back(k.choice[j]);
            const auto& e = c.comps[j];
            p.eps.push_back(k.choice[j] ? e.eps_max() : e.eps_low());
        }
        r.witness = p;
    }
    return r;
}

bool single_interval_criterion(const LChain& c) {
    if (!c.in_standard_form()) throw Error(ErrorCode::not_applicable, "chain is not in the standard normal form");
    if (c.unstable_count() > 2) throw Error(ErrorCode::not_applicable, "more than two unstable components");
    if (c.unstable_count() == 0) return true;
    // one interval, summand everywhere, destabilizing line at the unstable ones
    std::array<bool, 3> reach{};
    auto lines = [&](int j) {
        const auto& e = c.comps[j];
        if (e.dbl) return std::vector<int>{1};
        if (e.cls() == LClass::unstable) return std::vector<int>{2};
        return std::vector<int>{1, 2};
    };
    for (int l : lines(0)) reach[l] = true;
    for (int j = 1; j < c.n(); ++j) {
        std::array<bool, 3> next{};
        for (int l : lines(j))
            for (int p = 1; p <= 2; ++p)
                if (reach[p] && (c.comps[j - 1].dbl || c.comps[j].dbl || c.glued(j, p, l))) next[l] = true;
        reach = next;
    }
    return !(reach[1] || reach[2]);
}

LChain twist_equivalence(const LChain& c, int node, int amount) {
    if (node < 1 || node >= c.n()) throw Error(ErrorCode::invalid_parameter, "twist needs an interior node");
    LChain out = c;
    out.comps[node - 1].x1 += amount;
    out.comps[node - 1].x2 += amount;
    out.comps[node].x1 -= amount;
    out.comps[node].x2 -= amount;
    return out;
}

MuCheck mu_reference_check(const LChain& c) {
    if (c.chi_total() != 0) throw Error(ErrorCode::not_applicable, "reference check needs chi(E) = 0");
    MuCheck best;
    best.chi = LLONG_MIN;
    const int n = c.n();
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo; hi < n; ++hi) {
            LChain sub;
            sub.A = c.A;
            sub.comps.assign(c.comps.begin() + lo, c.comps.begin() + hi + 1);
            for (int t = lo; t < hi; ++t) sub.glue.push_back(c.glue[t]);
            // best rank-one sheaf on the interval: one saturated piece, maximal where gluing allows
            long long top = LLONG_MIN;
            int len = hi - lo + 1;
            for (long long mask = 0; mask < (1LL << len); ++mask) {
                SubsheafProfile p;
                p.starts = {0};
                bool okp = true;
                for (int j = 0; j < len && okp; ++j) {
                    const auto& e = sub.comps[j];
                    int ch = mask >> j & 1 ? (e.cls() == LClass::unstable ? 2 : 1) : 0;
                    p.choice.push_back(ch);
                    p.eps.push_back(ch ? e.eps_max() : e.eps_low());
                }
                // try both lines on semistable pieces
                std::vector<int> semi;
                for (int j = 0; j < len; ++j)
                    if (p.choice[j] && sub.comps[j].cls() == LClass::semistable) semi.push_back(j);
                for (long long lm = 0; lm < (1LL << semi.size()); ++lm) {
                    for (std::size_t s = 0; s < semi.size(); ++s) p.choice[semi[s]] = lm >> s & 1 ? 2 : 1;
                    try {
                        check_profile(sub, p);
                    } catch (const Error&) {
                        continue;
                    }
                    long long chi = 0;
                    for (int j = 0; j < len; ++j) chi += c.A + p.eps[j];
                    chi -= len - 1;
                    chi -= (lo > 0) + (hi < n - 1);  // vanishing at the nodes where F stops
                    top = std::max(top, chi);
                }
            }
            if (top > best.chi) best = {top <= 0, lo, hi, top};
        }
    auto l = is_l_semistable_bruteforce(c, kMaxN);
    if (!l.semistable && best.chi <= 0) best = {false, 0, n - 1, chi_rank1(c, *l.witness)};
    best.semistable = best.chi <= 0;
    return best;
}

LChain gap_two_example(bool glue_destabilizing) {
    LChain c;
    c.A = 0;
    c.comps = {{0, 2, false}, {0, 0, false}};
    c.glue = {0};
    if (glue_destabilizing) c.set_glued(1, 2, 1);
    return c;
}

SweepStats single_interval_sweep(int n_max, int max_nodes) {
    SweepStats st;
    for (int n = 1; n <= n_max; ++n) {
        // class digits: 0 semistable, 1 unstable, 2 double
        std::vector<int> cls(n, 0);
        for (;;) {
            int unst = static_cast<int>(std::count(cls.begin(), cls.end(), 1));
            if (unst <= 2) {
                LChain c;
                c.comps.resize(n);
                c.glue.assign(n - 1, 0);
                std::vector<int> opt(n - 1, 0);
                std::vector<int> nodes;
                for (int t = 0; t + 1 < n; ++t) {
                    auto w = [&](int j) { return cls[j] == 0 ? 2 : cls[j] == 1 ? 1 : 0; };
                    opt[t] = w(t) * w(t + 1);
                    if (opt[t]) nodes.push_back(t);
                }
                // node subsets of size <= max_nodes, then per node a nonempty set of line pairs
                int nn = static_cast<int>(nodes.size());
                for (long long sm = 0; sm < (1LL << nn); ++sm) {
                    if (__builtin_popcountll(sm) > max_nodes) continue;
                    std::vector<int> chosen;
                    for (int i = 0; i < nn; ++i)
                        if (sm >> i & 1) chosen.push_back(nodes[i]);
                    // allowed bits per chosen node
                    std::vector<std::vector<int>> bits(chosen.size());
                    for (std::size_t i = 0; i < chosen.size(); ++i) {
                        int t = chosen[i];
                        for (int l = 1; l <= 2; ++l)
                            for (int lp = 1; lp <= 2; ++lp) {
                                if (cls[t] == 1 && l != 2) continue;
                                if (cls[t + 1] == 1 && lp != 2) continue;
                                bits[i].push_back(line_bit(l, lp));
                            }
                    }
                    std::vector<int> sub(chosen.size(), 1);
                    for (;;) {
                        std::fill(c.glue.begin(), c.glue.end(), 0);
                        for (std::size_t i = 0; i < chosen.size(); ++i)
                            for (std::size_t b = 0; b < bits[i].size(); ++b)
                                if (sub[i] >> b & 1) c.glue[chosen[i]] |= static_cast<std::uint8_t>(1 << bits[i][b]);
                        for (int fm = 0; fm < (1 << n); ++fm) {
                            for (int j = 0; j < n; ++j) {
                                int hi = fm >> j & 1;
                                auto& e = c.comps[j];
                                if (cls[j] == 1) e = {hi, hi + 1, false};
                                else e = {1 + hi, 1 + hi, cls[j] == 2};
                            }
                            ++st.chains;
                            bool fast = single_interval_criterion(c);
                            bool slow = is_l_semistable_bruteforce(c).semistable;
                            if (!slow) ++st.unstable_verdicts;
                            if (fast != slow) {
                                if (!st.disagreements) st.first_disagreement = lchain_to_json(c).dump();
                                ++st.disagreements;
                            }
                        }
                        std::size_t i = 0;
                        for (; i < sub.size(); ++i) {
                            if (++sub[i] < (1 << bits[i].size())) break;
                            sub[i] = 1;
                        }
                        if (i == sub.size()) break;
                    }
                }
            }
            int j = 0;
            for (; j < n; ++j) {
                if (++cls[j] < 3) break;
                cls[j] = 0;
            }
            if (j == n) break;
        }
    }
    return st;
}

nlohmann::json lchain_to_json(const LChain& c) {
    auto chi = nlohmann::json::array();
    auto stab = nlohmann::json::array();
    for (auto& e : c.comps) {
        chi.push_back({e.x1, e.x2});
        stab.push_back(e.cls() == LClass::unstable ? "unstable" : e.dbl ? "double" : "semistable");
    }
    auto glued = nlohmann::json::array();
    for (int t = 1; t < c.n(); ++t) {
        auto pairs = nlohmann::json::array();
        for (int l = 1; l <= 2; ++l)
            for (int lp = 1; lp <= 2; ++lp)
                if (c.glued(t, l, lp)) pairs.push_back({l, lp});
        if (!pairs.empty()) glued.push_back({{"node", t}, {"pairs", pairs}});
    }
    return {{"A", c.A}, {"chi", chi}, {"stability", stab}, {"glued", glued}};
}

LChain lchain_from_json(const nlohmann::json& j) {
    try {
        LChain c;
        c.A = j.value("A", 0);
        std::vector<std::string> stab;
        if (j.contains("stability")) stab = j["stability"].get<std::vector<std::string>>();
        auto cls_of = [&](std::size_t i) -> std::optional<LClass> {
            if (i >= stab.size()) return std::nullopt;
            if (stab[i] == "semistable") return LClass::semistable;
            if (stab[i] == "unstable") return LClass::unstable;
            if (stab[i] == "double") return LClass::dbl;
            throw Error(ErrorCode::parse_error, "unknown stability '" + stab[i] + "'");
        };
        if (j.contains("chi")) {
            for (std::size_t i = 0; i < j["chi"].size(); ++i) {
                auto p = j["chi"][i].get<std::vector<int>>();
                if (p.size() != 2) throw Error(ErrorCode::parse_error, "chi entries are pairs");
                LComponent e{std::min(p[0], p[1]), std::max(p[0], p[1]), false};
                auto k = cls_of(i);
                if (k == LClass::dbl) {
                    if (e.x1 != e.x2) throw Error(ErrorCode::parse_error, "double component needs equal chi");
                    e.dbl = true;
                } else if (k && (*k == LClass::unstable) != (e.x1 < e.x2)) {
                    throw Error(ErrorCode::parse_error, "stability disagrees with chi at component " + std::to_string(i + 1));
                }
                c.comps.push_back(e);
            }
            c.glue.assign(c.comps.empty() ? 0 : c.comps.size() - 1, 0);
        } else {
            auto f = j.at("f").get<std::vector<int>>();
            std::vector<LClass> cls;
            for (std::size_t i = 0; i < f.size(); ++i) {
                auto k = cls_of(i);
                cls.push_back(k ? *k : (f[i] % 2 ? LClass::unstable : LClass::semistable));
            }
            try {
                c = make_lchain(f, cls, c.A);
            } catch (const Error& e) {
                throw Error(ErrorCode::parse_error, e.what());
            }
        }
        for (const char* key : {"glued", "forbidden"}) {
            if (!j.contains(key)) continue;
            for (auto& ent : j[key]) {
                int node = ent.at("node").get<int>();
                for (auto& pr : ent.at("pairs")) {
                    auto v = pr.get<std::vector<int>>();
                    if (v.size() != 2) throw Error(ErrorCode::parse_error, "gluing pairs have two lines");
                    try {
                        c.set_glued(node, v[0], v[1]);
                    } catch (const Error& e) {
                        throw Error(ErrorCode::parse_error, e.what());
                    }
                }
            }
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

nlohmann::json profile_to_json(const SubsheafProfile& p) {
    std::vector<int> starts;
    for (int s : p.starts) starts.push_back(s + 1);
    return {{"interval_starts", starts}, {"line", p.choice}, {"eps", p.eps}, {"m", p.m()}};
}

}  // namespace bnchain
