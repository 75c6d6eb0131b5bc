#ifndef EQUITYFRONT_TOURS_HPP
#define EQUITYFRONT_TOURS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "equityfront/instance.hpp"

namespace equityfront {

// Bitmask over customer indices; bit i = customer i is on the tour.
using SubsetKey = std::uint32_t;

inline std::vector<int> subset_members(SubsetKey s) {
    std::vector<int> m;
    for (int i = 0; s != 0; ++i, s >>= 1)
        if (s & 1u) m.push_back(i);
    return m;
}

// All achievable closed-tour lengths for one customer subset.
struct TourLengthSet {
    SubsetKey subset = 0;
    double tsp_optimal = 0.0;
    std::vector<double> all_lengths;  // sorted ascending, distinct up to dedup tol
};

// Nonempty capacity-feasible subsets in ascending bitmask order.
inline std::vector<SubsetKey> feasible_subsets(const Instance& inst) {
    inst.validate();
    const int n = inst.num_customers();
    if (n > 32)
        throw SizeLimitError("feasible_subsets: bitmask representation supports at most 32 customers");
    std::vector<SubsetKey> out;
    const SubsetKey full = n == 32 ? ~SubsetKey(0) : (SubsetKey(1) << n) - 1;
    for (SubsetKey s = 1; s != 0 && s <= full; ++s) {
        long long demand = 0;
        SubsetKey t = s;
        for (int i = 0; t != 0; ++i, t >>= 1)
            if (t & 1u) demand += inst.demands[i];
        if (demand <= inst.capacity) out.push_back(s);
    }
    return out;
}

// Exact shortest closed tour depot -> subset -> depot, Held-Karp DP over
// (visited set, last customer) states.
inline double tsp_optimal_length(SubsetKey subset, const DistanceMatrix& d) {
    const std::vector<int> members = subset_members(subset);
    const int m = static_cast<int>(members.size());
    if (m == 0) throw ValidationError("tsp_optimal_length: empty subset");
    if (m == 1) return 2.0 * d(0, members[0] + 1);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(static_cast<std::size_t>(1u << m) * m, inf);
    for (int i = 0; i < m; ++i)
        dp[static_cast<std::size_t>(1u << i) * m + i] = d(0, members[i] + 1);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        for (int last = 0; last < m; ++last) {
            if (!(mask & (1u << last))) continue;
            double cur = dp[static_cast<std::size_t>(mask) * m + last];
            if (cur == inf) continue;
            for (int nxt = 0; nxt < m; ++nxt) {
                if (mask & (1u << nxt)) continue;
                std::uint32_t nm = mask | (1u << nxt);
                double cand = cur + d(members[last] + 1, members[nxt] + 1);
                double& slot = dp[static_cast<std::size_t>(nm) * m + nxt];
                if (cand < slot) slot = cand;
            }
        }
    }
    double best = inf;
    const std::uint32_t full = (1u << m) - 1;
    for (int last = 0; last < m; ++last)
        best = std::min(best, dp[static_cast<std::size_t>(full) * m + last] + d(members[last] + 1, 0));
    return best;
}

// All distinct closed-tour lengths of a subset: every visiting order up to
// direction reversal, lengths merged within tol.
inline TourLengthSet all_tour_lengths(SubsetKey subset, const DistanceMatrix& d,
                                      int max_perm_size = 9, double tol = kDedupTol) {
    std::vector<int> members = subset_members(subset);
    const int m = static_cast<int>(members.size());
    if (m == 0) throw ValidationError("all_tour_lengths: empty subset");
    if (m > max_perm_size)
        throw SizeLimitError("all_tour_lengths: subset of size " + std::to_string(m) +
                             " exceeds max_perm_size " + std::to_string(max_perm_size) +
                             "; use TSP-constrained mode");

    TourLengthSet out;
    out.subset = subset;
    std::vector<double> lengths;
    std::sort(members.begin(), members.end());
    do {
        if (m >= 2 && members.front() > members.back()) continue;  // reversal duplicate
        double len = d(0, members[0] + 1);
        for (int i = 0; i + 1 < m; ++i) len += d(members[i] + 1, members[i + 1] + 1);
        len += d(members[m - 1] + 1, 0);
        lengths.push_back(len);
    } while (std::next_permutation(members.begin(), members.end()));

    std::sort(lengths.begin(), lengths.end());
    for (double len : lengths)
        if (out.all_lengths.empty() || len - out.all_lengths.back() > tol)
            out.all_lengths.push_back(len);
    out.tsp_optimal = out.all_lengths.front();
    return out;
}

enum class TourMode { Conventional, TspConstrained };

inline std::string mode_name(TourMode m) {
    return m == TourMode::Conventional ? "conventional" : "tsp";
}

inline std::optional<TourMode> parse_mode(const std::string& s) {
    if (s == "conventional") return TourMode::Conventional;
    if (s == "tsp") return TourMode::TspConstrained;
    return std::nullopt;
}

// Per-subset tour lengths for a whole instance. In TSP-constrained mode only
// the optimum is stored; conventional mode keeps the full length lists.
class SubsetCache {
public:
    SubsetCache() = default;

    static SubsetCache build(const Instance& inst, TourMode mode, int max_perm_size = 9,
                             double tol = kDedupTol, int jobs = 1) {
        SubsetCache cache;
        cache.instance_hash_ = instance_hash(inst);
        cache.mode_ = mode;
        cache.max_perm_size_ = max_perm_size;
        const DistanceMatrix d(inst);
        const std::vector<SubsetKey> subsets = feasible_subsets(inst);
        cache.entries_.resize(subsets.size());

        auto compute_range = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                SubsetKey s = subsets[k];
                if (mode == TourMode::TspConstrained) {
                    cache.entries_[k] = TourLengthSet{s, tsp_optimal_length(s, d), {}};
                    cache.entries_[k].all_lengths.push_back(cache.entries_[k].tsp_optimal);
                } else {
                    cache.entries_[k] = all_tour_lengths(s, d, max_perm_size, tol);
                }
            }
        };
        if (jobs <= 1 || subsets.size() < 64) {
            compute_range(0, subsets.size());
        } else {
            // disjoint slots per worker; the merged result is order-independent
            std::vector<std::thread> workers;
            std::size_t chunk = (subsets.size() + jobs - 1) / jobs;
            for (int w = 0; w < jobs; ++w) {
                std::size_t lo = std::min(subsets.size(), w * chunk);
                std::size_t hi = std::min(subsets.size(), lo + chunk);
                if (lo < hi) workers.emplace_back(compute_range, lo, hi);
            }
            for (auto& t : workers) t.join();
        }

        cache.index_.reserve(subsets.size());
        for (std::size_t k = 0; k < subsets.size(); ++k) cache.index_[subsets[k]] = k;
        return cache;
    }

    const TourLengthSet& at(SubsetKey s) const {
        auto it = index_.find(s);
        if (it == index_.end())
            throw ValidationError("SubsetCache: subset not in cache");
        return entries_[it->second];
    }

    double tsp_optimal(SubsetKey s) const { return at(s).tsp_optimal; }
    const std::vector<TourLengthSet>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    TourMode mode() const { return mode_; }
    std::uint64_t hash() const { return instance_hash_; }

    void save(const std::string& path) const {
        nlohmann::json j;
        j["format_version"] = 1;
        j["instance_hash"] = instance_hash_;
        j["mode"] = mode_name(mode_);
        j["max_perm_size"] = max_perm_size_;
        auto subsets = nlohmann::json::array();
        for (const auto& e : entries_) {
            nlohmann::json je;
            je["mask"] = e.subset;
            je["tsp"] = e.tsp_optimal;
            if (mode_ == TourMode::Conventional) je["lengths"] = e.all_lengths;
            subsets.push_back(std::move(je));
        }
        j["subsets"] = std::move(subsets);
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
            out << j.dump() << "\n";
            if (!out) throw std::runtime_error("write failed: " + tmp);
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0)
            throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }

    // Returns nullopt when the file does not match (hash/mode); caller recomputes.
    static std::optional<SubsetCache> load(const std::string& path, const Instance& inst,
                                           TourMode mode) {
        std::ifstream in(path);
        if (!in) return std::nullopt;
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
        if (!j.contains("format_version") || j["format_version"].get<int>() != 1) return std::nullopt;
        if (j.value("instance_hash", std::uint64_t(0)) != instance_hash(inst)) return std::nullopt;
        if (j.value("mode", std::string()) != mode_name(mode)) return std::nullopt;

        SubsetCache cache;
        cache.instance_hash_ = instance_hash(inst);
        cache.mode_ = mode;
        cache.max_perm_size_ = j.value("max_perm_size", 9);
        for (const auto& je : j["subsets"]) {
            TourLengthSet e;
            e.subset = je.at("mask").get<SubsetKey>();
            e.tsp_optimal = je.at("tsp").get<double>();
            if (mode == TourMode::Conventional)
                e.all_lengths = je.at("lengths").get<std::vector<double>>();
            else
                e.all_lengths.push_back(e.tsp_optimal);
            cache.entries_.push_back(std::move(e));
        }
        cache.index_.reserve(cache.entries_.size());
        for (std::size_t k = 0; k < cache.entries_.size(); ++k)
            cache.index_[cache.entries_[k].subset] = k;
        return cache;
    }

private:
    std::uint64_t instance_hash_ = 0;
    TourMode mode_ = TourMode::Conventional;
    int max_perm_size_ = 9;
    std::vector<TourLengthSet> entries_;
    std::unordered_map<SubsetKey, std::size_t> index_;
};

// Convenience: build or reload a cache file next to the run outputs.
inline SubsetCache build_cache(const Instance& inst, TourMode mode, const std::string& cache_path,
                               int max_perm_size = 9, double tol = kDedupTol, int jobs = 1) {
    if (!cache_path.empty()) {
        if (auto cached = SubsetCache::load(cache_path, inst, mode)) return std::move(*cached);
    }
    SubsetCache cache = SubsetCache::build(inst, mode, max_perm_size, tol, jobs);
    if (!cache_path.empty()) cache.save(cache_path);
    return cache;
}

} // namespace equityfront

#endif
