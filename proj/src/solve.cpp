#include "mcsp/solve.hpp"

#include "mcsp/error.hpp"
#include "mcsp/simplex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <unordered_map>

namespace mcsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Coverage bitset with run iteration; positions are 0-based here.
struct BitCover {
    int n = 0;
    std::vector<std::uint64_t> words;

    void init(int size) {
        n = size;
        words.assign(static_cast<std::size_t>((size + 63) / 64), 0);
    }

    bool range_free(int start, int len) const {
        const int last = start + len - 1;
        int wi = start >> 6;
        const int we = last >> 6;
        if (wi == we) {
            const std::uint64_t mask =
                (len == 64 ? ~0ull : ((1ull << len) - 1)) << (start & 63);
            return (words[static_cast<std::size_t>(wi)] & mask) == 0;
        }
        if (words[static_cast<std::size_t>(wi)] & (~0ull << (start & 63))) return false;
        for (int i = wi + 1; i < we; ++i)
            if (words[static_cast<std::size_t>(i)]) return false;
        const int tail = (last & 63) + 1;
        const std::uint64_t mask = tail == 64 ? ~0ull : ((1ull << tail) - 1);
        return (words[static_cast<std::size_t>(we)] & mask) == 0;
    }

    void flip_range(int start, int len, bool set) {
        const int last = start + len - 1;
        int wi = start >> 6;
        const int we = last >> 6;
        auto apply = [&](int word, std::uint64_t mask) {
            if (set)
                words[static_cast<std::size_t>(word)] |= mask;
            else
                words[static_cast<std::size_t>(word)] &= ~mask;
        };
        if (wi == we) {
            apply(wi, (len == 64 ? ~0ull : ((1ull << len) - 1)) << (start & 63));
            return;
        }
        apply(wi, ~0ull << (start & 63));
        for (int i = wi + 1; i < we; ++i) apply(i, ~0ull);
        const int tail = (last & 63) + 1;
        apply(we, tail == 64 ? ~0ull : ((1ull << tail) - 1));
    }

    // First uncovered position >= pos, or n.
    int next_free(int pos) const {
        while (pos < n) {
            const std::uint64_t cur =
                ~words[static_cast<std::size_t>(pos >> 6)] & (~0ull << (pos & 63));
            if (cur) {
                const int hit = (pos & ~63) + std::countr_zero(cur);
                return hit < n ? hit : n;
            }
            pos = (pos & ~63) + 64;
        }
        return n;
    }

    // First covered position >= pos, or n.
    int next_covered(int pos) const {
        while (pos < n) {
            const std::uint64_t cur =
                words[static_cast<std::size_t>(pos >> 6)] & (~0ull << (pos & 63));
            if (cur) {
                const int hit = (pos & ~63) + std::countr_zero(cur);
                return hit < n ? hit : n;
            }
            pos = (pos & ~63) + 64;
        }
        return n;
    }
};

struct DomKey {
    std::array<std::uint64_t, 4> w{};

    bool operator==(const DomKey& other) const { return w == other.w; }
};

struct DomHash {
    std::size_t operator()(const DomKey& key) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t x : key.w) {
            x ^= x >> 30;
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 27;
            h = h * 0x94d049bb133111ebull + x;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

int first_placeable(const std::vector<int>& starts, const std::vector<char>& covered, int len,
                    int n) {
    for (int k : starts) {
        const int s = k - 1;
        if (s + len > n) continue;
        bool free = true;
        for (int p = s; p < s + len && free; ++p) free = !covered[static_cast<std::size_t>(p)];
        if (free) return s;
    }
    return -1;
}

// Exact DFS over prefix tilings of s1 with matching s2 placements.
class Search {
  public:
    Search(const SubstringCatalog& catalog, const BlockSet& blocks,
           const std::vector<double>& scores, bool use_dominance, Clock::time_point t0,
           double deadline_s)
        : n_(catalog.n), t0_(t0), deadline_s_(deadline_s) {
        const auto& entries = catalog.entries;
        const int num_entries = static_cast<int>(entries.size());
        max_len_ = entries.empty() ? 1 : static_cast<int>(entries.front().t.size());

        entry_len_.resize(static_cast<std::size_t>(num_entries));
        live1_.assign(static_cast<std::size_t>(num_entries), 0);
        live2_.assign(static_cast<std::size_t>(num_entries), 0);
        live_len_.assign(static_cast<std::size_t>(max_len_) + 1, 0);
        occ1_at_.assign(static_cast<std::size_t>(n_), {});
        occ2_overlapping_.assign(static_cast<std::size_t>(n_), {});

        for (int e = 0; e < num_entries; ++e) {
            const auto& entry = entries[static_cast<std::size_t>(e)];
            const int len = static_cast<int>(entry.t.size());
            entry_len_[static_cast<std::size_t>(e)] = len;
            live1_[static_cast<std::size_t>(e)] = static_cast<int>(entry.q1.size());
            live2_[static_cast<std::size_t>(e)] = static_cast<int>(entry.q2.size());
            ++live_len_[static_cast<std::size_t>(len)];
            for (int k : entry.q1) occ1_at_[static_cast<std::size_t>(k - 1)].push_back(e);
            for (int k : entry.q2) {
                const int occ = static_cast<int>(occ2_entry_.size());
                occ2_entry_.push_back(e);
                occ2_cover_.push_back(0);
                for (int p = k - 1; p < k - 1 + len; ++p)
                    occ2_overlapping_[static_cast<std::size_t>(p)].push_back(occ);
            }
        }

        const auto m = blocks.blocks.size();
        blk_len_.resize(m);
        blk_k2_.resize(m);
        cands_.assign(static_cast<std::size_t>(n_), {});
        for (std::size_t b = 0; b < m; ++b) {
            const auto& blk = blocks.blocks[b];
            blk_len_[b] = blk.length();
            blk_k2_[b] = blk.k2 - 1;
            cands_[static_cast<std::size_t>(blk.k1 - 1)].push_back(static_cast<int>(b));
        }
        if (!scores.empty()) {
            for (auto& list : cands_)
                std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
                    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
                });
        }

        cov2_.init(n_);
        use_dom_ = use_dominance && n_ <= 256;
    }

    // Runs the search; returns true if the incumbent was improved.
    bool run(int& best_value, std::vector<int>& best_path, long long global_lb) {
        best_value_ = best_value;
        global_lb_ = global_lb;
        improved_ = false;
        dfs(0, 0);
        if (improved_) {
            best_value = best_value_;
            best_path = best_path_;
        }
        return improved_;
    }

    long long nodes() const { return nodes_; }
    bool timed_out() const { return timed_out_; }
    bool reached_bound() const { return reached_bound_; }
    double improve_time_s() const { return improve_time_s_; }

  private:
    void kill1(int e) {
        if (--live1_[static_cast<std::size_t>(e)] == 0 && live2_[static_cast<std::size_t>(e)] > 0)
            --live_len_[static_cast<std::size_t>(entry_len_[static_cast<std::size_t>(e)])];
    }
    void revive1(int e) {
        if (live1_[static_cast<std::size_t>(e)]++ == 0 && live2_[static_cast<std::size_t>(e)] > 0)
            ++live_len_[static_cast<std::size_t>(entry_len_[static_cast<std::size_t>(e)])];
    }
    void kill2(int occ) {
        if (occ2_cover_[static_cast<std::size_t>(occ)]++ == 0) {
            const int e = occ2_entry_[static_cast<std::size_t>(occ)];
            if (--live2_[static_cast<std::size_t>(e)] == 0 && live1_[static_cast<std::size_t>(e)] > 0)
                --live_len_[static_cast<std::size_t>(entry_len_[static_cast<std::size_t>(e)])];
        }
    }
    void revive2(int occ) {
        if (--occ2_cover_[static_cast<std::size_t>(occ)] == 0) {
            const int e = occ2_entry_[static_cast<std::size_t>(occ)];
            if (live2_[static_cast<std::size_t>(e)]++ == 0 && live1_[static_cast<std::size_t>(e)] > 0)
                ++live_len_[static_cast<std::size_t>(entry_len_[static_cast<std::size_t>(e)])];
        }
    }

    int current_lmax() const {
        for (int len = max_len_; len >= 1; --len)
            if (live_len_[static_cast<std::size_t>(len)] > 0) return len;
        return 1;
    }

    int segment_bound(int lmax) const {
        int total = 0;
        int pos = 0;
        while (pos < n_) {
            const int start = cov2_.next_free(pos);
            if (start >= n_) break;
            const int end = cov2_.next_covered(start);
            total += (end - start + lmax - 1) / lmax;
            pos = end;
        }
        return total;
    }

    void place(int j, int block) {
        const int len = blk_len_[static_cast<std::size_t>(block)];
        const int k2 = blk_k2_[static_cast<std::size_t>(block)];
        for (int p = j; p < j + len; ++p)
            for (int e : occ1_at_[static_cast<std::size_t>(p)]) kill1(e);
        cov2_.flip_range(k2, len, true);
        for (int p = k2; p < k2 + len; ++p)
            for (int occ : occ2_overlapping_[static_cast<std::size_t>(p)]) kill2(occ);
    }

    void unplace(int j, int block) {
        const int len = blk_len_[static_cast<std::size_t>(block)];
        const int k2 = blk_k2_[static_cast<std::size_t>(block)];
        for (int p = k2; p < k2 + len; ++p)
            for (int occ : occ2_overlapping_[static_cast<std::size_t>(p)]) revive2(occ);
        cov2_.flip_range(k2, len, false);
        for (int p = j; p < j + len; ++p)
            for (int e : occ1_at_[static_cast<std::size_t>(p)]) revive1(e);
    }

    // Returns true when the whole search must stop (timeout or bound reached).
    bool dfs(int j, int cnt) {
        if (j == n_) {
            if (cnt < best_value_) {
                best_value_ = cnt;
                best_path_ = path_;
                improved_ = true;
                improve_time_s_ = seconds_since(t0_);
                if (best_value_ <= global_lb_) {
                    reached_bound_ = true;
                    return true;
                }
            }
            return false;
        }
        if ((++tick_ & 4095) == 0 && seconds_since(t0_) > deadline_s_) {
            timed_out_ = true;
            return true;
        }

        const int rem = n_ - j;
        const int lmax = current_lmax();
        if (cnt + (rem + lmax - 1) / lmax >= best_value_) return false;
        if (cnt + segment_bound(lmax) >= best_value_) return false;

        if (use_dom_) {
            DomKey key;
            std::copy(cov2_.words.begin(), cov2_.words.end(), key.w.begin());
            auto it = dom_.find(key);
            if (it != dom_.end()) {
                if (it->second <= cnt) return false;
                it->second = static_cast<std::uint16_t>(cnt);
            } else if (dom_.size() < kDomCap) {
                dom_.emplace(key, static_cast<std::uint16_t>(cnt));
            }
        }

        for (int block : cands_[static_cast<std::size_t>(j)]) {
            const int len = blk_len_[static_cast<std::size_t>(block)];
            const int k2 = blk_k2_[static_cast<std::size_t>(block)];
            if (!cov2_.range_free(k2, len)) continue;
            ++nodes_;
            place(j, block);
            path_.push_back(block);
            const bool abort = dfs(j + len, cnt + 1);
            path_.pop_back();
            unplace(j, block);
            if (abort) return true;
        }
        return false;
    }

    static constexpr std::size_t kDomCap = std::size_t{1} << 21;

    int n_;
    int max_len_ = 1;
    std::vector<int> entry_len_;
    std::vector<int> live1_, live2_, live_len_;
    std::vector<std::vector<int>> occ1_at_;
    std::vector<int> occ2_entry_, occ2_cover_;
    std::vector<std::vector<int>> occ2_overlapping_;
    std::vector<int> blk_len_, blk_k2_;
    std::vector<std::vector<int>> cands_;
    BitCover cov2_;
    std::vector<int> path_, best_path_;
    std::unordered_map<DomKey, std::uint16_t, DomHash> dom_;
    bool use_dom_ = false;
    int best_value_ = 0;
    long long global_lb_ = 1;
    long long nodes_ = 0;
    long tick_ = 0;
    bool improved_ = false;
    bool timed_out_ = false;
    bool reached_bound_ = false;
    double improve_time_s_ = 0.0;
    Clock::time_point t0_;
    double deadline_s_ = 0.0;
};

std::vector<double> block_scores(ModelKind kind, const LpSolution& lp,
                                 const SubstringCatalog& catalog, const BlockSet& blocks) {
    if (kind == ModelKind::cb) return lp.values;
    const CatalogIndex index(catalog);
    std::vector<double> scores(blocks.blocks.size(), 0.0);
    long long g = 0;
    for (std::size_t e = 0; e < catalog.entries.size(); ++e) {
        const auto& entry = catalog.entries[e];
        for (std::size_t i1 = 0; i1 < entry.q1.size(); ++i1)
            for (std::size_t i2 = 0; i2 < entry.q2.size(); ++i2) {
                const double v1 =
                    lp.values[static_cast<std::size_t>(index.y1_offset(static_cast<int>(e))) + i1];
                const double v2 =
                    lp.values[static_cast<std::size_t>(index.y2_offset(static_cast<int>(e))) + i2];
                scores[static_cast<std::size_t>(g++)] = std::min(v1, v2);
            }
    }
    return scores;
}

} // namespace

Solution trivial_solution(const Instance& inst) {
    std::array<std::vector<int>, 256> positions;
    for (int p = 0; p < inst.n; ++p)
        positions[static_cast<unsigned char>(inst.s2[static_cast<std::size_t>(p)])].push_back(p);
    std::array<std::size_t, 256> next{};

    Solution sol;
    sol.blocks.reserve(static_cast<std::size_t>(inst.n));
    for (int p = 0; p < inst.n; ++p) {
        const auto c = static_cast<unsigned char>(inst.s1[static_cast<std::size_t>(p)]);
        const int k2 = positions[c][next[c]++];
        sol.blocks.push_back(CommonBlock{std::string(1, char(c)), p + 1, k2 + 1});
    }
    sol.value = inst.n;
    return sol;
}

Solution greedy_solution(const Instance& inst, const SubstringCatalog& catalog) {
    const int n = inst.n;
    std::vector<char> cov1(static_cast<std::size_t>(n), 0);
    std::vector<char> cov2(static_cast<std::size_t>(n), 0);
    Solution sol;
    int covered = 0;
    std::size_t cursor = 0;

    while (covered < n) {
        // Entries become infeasible permanently as coverage grows, so the
        // cursor never moves back.
        int k1 = -1, k2 = -1;
        while (cursor < catalog.entries.size()) {
            const auto& entry = catalog.entries[cursor];
            const int len = static_cast<int>(entry.t.size());
            k1 = first_placeable(entry.q1, cov1, len, n);
            k2 = k1 >= 0 ? first_placeable(entry.q2, cov2, len, n) : -1;
            if (k1 >= 0 && k2 >= 0) break;
            ++cursor;
        }
        if (cursor >= catalog.entries.size())
            throw Error(ErrorKind::internal, "greedy ran out of placeable substrings");

        const auto& entry = catalog.entries[cursor];
        const int len = static_cast<int>(entry.t.size());
        for (int p = k1; p < k1 + len; ++p) cov1[static_cast<std::size_t>(p)] = 1;
        for (int p = k2; p < k2 + len; ++p) cov2[static_cast<std::size_t>(p)] = 1;
        covered += len;
        sol.blocks.push_back(CommonBlock{entry.t, k1 + 1, k2 + 1});
    }
    sol.value = static_cast<int>(sol.blocks.size());
    return sol;
}

Solution brute_force(const Instance& inst) {
    constexpr int kGuard = 14;
    if (inst.n > kGuard)
        throw Error(ErrorKind::too_large,
                    "brute force is guarded to n <= " + std::to_string(kGuard));

    const int n = inst.n;
    const std::string_view s1(inst.s1);
    const std::string_view s2(inst.s2);

    // Longest common substring length, by plain string comparison.
    int lcs = 0;
    for (int len = 1; len <= n; ++len) {
        bool found = false;
        for (int i = 0; i + len <= n && !found; ++i)
            for (int p = 0; p + len <= n && !found; ++p)
                found = s1.substr(i, len) == s2.substr(p, len);
        if (!found) break;
        lcs = len;
    }

    int best_value = n + 1;
    std::vector<std::pair<int, int>> best, path; // (s1 pos, s2 pos) with implied lengths
    std::vector<int> best_lens, lens;
    std::uint32_t cov2 = 0;

    auto rec = [&](auto&& self, int j, int cnt) -> void {
        if (j == n) {
            if (cnt < best_value) {
                best_value = cnt;
                best = path;
                best_lens = lens;
            }
            return;
        }
        if (cnt + (n - j + lcs - 1) / lcs >= best_value) return;
        for (int len = n - j; len >= 1; --len) {
            const auto piece = s1.substr(static_cast<std::size_t>(j), static_cast<std::size_t>(len));
            const std::uint32_t mask = ((len == 32 ? ~0u : ((1u << len) - 1u)));
            for (int p = 0; p + len <= n; ++p) {
                if ((cov2 >> p) & mask) continue;
                if (s2.substr(static_cast<std::size_t>(p), static_cast<std::size_t>(len)) != piece)
                    continue;
                cov2 |= mask << p;
                path.emplace_back(j, p);
                lens.push_back(len);
                self(self, j + len, cnt + 1);
                lens.pop_back();
                path.pop_back();
                cov2 &= ~(mask << p);
            }
        }
    };
    rec(rec, 0, 0);

    Solution sol;
    for (std::size_t i = 0; i < best.size(); ++i)
        sol.blocks.push_back(CommonBlock{
            std::string(s1.substr(static_cast<std::size_t>(best[i].first),
                                  static_cast<std::size_t>(best_lens[i]))),
            best[i].first + 1, best[i].second + 1});
    sol.value = best_value;
    return sol;
}

VerifyResult verify(const Instance& inst, const Solution& sol) {
    VerifyResult result;
    auto fail = [&](std::string reason) {
        result.ok = false;
        result.reasons.push_back(std::move(reason));
    };

    const int n = inst.n;
    if (sol.value != static_cast<int>(sol.blocks.size()))
        fail("value " + std::to_string(sol.value) + " does not match block count " +
             std::to_string(sol.blocks.size()));

    long long total_len = 0;
    std::vector<int> order(sol.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sol.blocks[static_cast<std::size_t>(a)].k1 < sol.blocks[static_cast<std::size_t>(b)].k1;
    });

    int expect = 1;
    for (int i : order) {
        const auto& b = sol.blocks[static_cast<std::size_t>(i)];
        const int len = b.length();
        total_len += len;
        if (len < 1 || b.k1 < 1 || b.k1 + len - 1 > n || b.k2 < 1 || b.k2 + len - 1 > n) {
            fail("block " + std::to_string(i) + " out of range");
            continue;
        }
        if (b.k1 > expect)
            fail("s1 position " + std::to_string(expect) + " uncovered");
        else if (b.k1 < expect)
            fail("s1 overlap at position " + std::to_string(b.k1));
        expect = std::max(expect, b.k1 + len);
        if (inst.s1.compare(static_cast<std::size_t>(b.k1 - 1), static_cast<std::size_t>(len), b.t) != 0)
            fail("block " + std::to_string(i) + " string mismatch in s1");
        if (inst.s2.compare(static_cast<std::size_t>(b.k2 - 1), static_cast<std::size_t>(len), b.t) != 0)
            fail("block " + std::to_string(i) + " string mismatch in s2");
    }
    if (expect != n + 1 && result.ok) fail("s1 position " + std::to_string(expect) + " uncovered");
    if (total_len != n)
        fail("total block length " + std::to_string(total_len) + " != n = " + std::to_string(n));

    std::vector<char> covered2(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < sol.blocks.size(); ++i) {
        const auto& b = sol.blocks[i];
        if (b.k2 < 1 || b.k2 + b.length() - 1 > n) continue;
        for (int p = b.k2; p < b.k2 + b.length(); ++p) {
            if (covered2[static_cast<std::size_t>(p - 1)]) {
                fail("s2 overlap at position " + std::to_string(p));
                break;
            }
            covered2[static_cast<std::size_t>(p - 1)] = 1;
        }
    }
    for (int p = 1; p <= n; ++p)
        if (!covered2[static_cast<std::size_t>(p - 1)]) {
            fail("s2 position " + std::to_string(p) + " uncovered");
            break;
        }

    return result;
}

SolveReport branch_and_bound(const Instance& inst, const SolveOptions& options) {
    if (options.time_limit_s <= 0)
        throw Error(ErrorKind::invalid_parameter, "time limit must be positive");

    const auto t0 = Clock::now();
    SolveReport report;
    report.lp_value = kNaN;
    report.lp_gap_pct = kNaN;

    const SubstringCatalog catalog = build_catalog(inst);
    if (seconds_since(t0) > options.time_limit_s) {
        report.status = SolveStatus::timeout_no_incumbent;
        report.lower_bound = 1.0;
        report.opt_gap_pct = kNaN;
        report.total_time_s = seconds_since(t0);
        return report;
    }
    const BlockSet blocks = build_blocks(catalog);

    Solution incumbent = greedy_solution(inst, catalog);
    report.time_to_first_s = seconds_since(t0);
    report.time_to_best_s = report.time_to_first_s;

    const int lmax0 = catalog.entries.empty() ? 1 : static_cast<int>(catalog.entries.front().t.size());
    long long global_lb = (inst.n + lmax0 - 1) / lmax0;

    std::vector<double> scores;
    if (options.use_lp_bound && seconds_since(t0) < options.time_limit_s) {
        IpModel model = options.kind == ModelKind::cb
                            ? std::move(build_cb(blocks, inst.n).ip)
                            : std::move(build_cs(catalog, inst.n).ip);
        const LpSolution lp = solve_lp(model);
        if (lp.status == LpStatus::optimal) {
            report.lp_value = lp.objective;
            global_lb = std::max(global_lb,
                                 static_cast<long long>(std::ceil(lp.objective - 1e-6)));
            scores = block_scores(options.kind, lp, catalog, blocks);
        }
    }

    bool proven = incumbent.value <= global_lb;
    bool exhausted = false;
    if (!proven && seconds_since(t0) < options.time_limit_s) {
        Search search(catalog, blocks, scores, options.use_dominance, t0, options.time_limit_s);
        int best_value = incumbent.value;
        std::vector<int> best_path;
        if (search.run(best_value, best_path, global_lb)) {
            incumbent.blocks.clear();
            for (int b : best_path) incumbent.blocks.push_back(blocks.blocks[static_cast<std::size_t>(b)]);
            incumbent.value = best_value;
            report.time_to_best_s = search.improve_time_s();
        }
        report.nodes = search.nodes();
        exhausted = !search.timed_out() && !search.reached_bound();
        proven = exhausted || incumbent.value <= global_lb;
    }

    report.best = std::move(incumbent);
    report.status = proven ? SolveStatus::optimal : SolveStatus::feasible;
    report.lower_bound = proven ? report.best->value : static_cast<double>(global_lb);
    report.total_time_s = seconds_since(t0);
    const double value = report.best->value;
    report.opt_gap_pct = std::max(0.0, 100.0 * (value - report.lower_bound) / value);
    if (!std::isnan(report.lp_value))
        report.lp_gap_pct = std::max(0.0, 100.0 * (value - report.lp_value) / value);
    return report;
}

SolveReport branch_and_bound(ModelKind kind, const Instance& inst, double time_limit_s,
                             bool use_lp_bound) {
    SolveOptions options;
    options.kind = kind;
    options.time_limit_s = time_limit_s;
    options.use_lp_bound = use_lp_bound;
    return branch_and_bound(inst, options);
}

} // namespace mcsp
