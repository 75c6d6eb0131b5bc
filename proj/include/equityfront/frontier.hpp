#ifndef EQUITYFRONT_FRONTIER_HPP
#define EQUITYFRONT_FRONTIER_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "equityfront/measures.hpp"
#include "equityfront/tours.hpp"

namespace equityfront {

// A partition of the customers into v tours with one chosen length per tour.
struct Solution {
    std::vector<SubsetKey> blocks;     // canonical order: sorted by smallest member
    std::vector<double> lengths;       // one per block
    double cost = 0.0;                 // sum of lengths
    std::vector<double> sorted_desc;   // workloads in non-increasing order
};

// Canonical identity of a solution at routing level: blocks plus lengths
// rounded to the 1e-9 grid. Used for front membership and agreement.
inline std::string solution_key(const std::vector<SubsetKey>& blocks,
                                const std::vector<double>& lengths) {
    std::string key;
    char buf[64];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::snprintf(buf, sizeof(buf), "%x:%.9f;", blocks[b], round_key(lengths[b]));
        key += buf;
    }
    return key;
}

inline std::string solution_key(const Solution& s) { return solution_key(s.blocks, s.lengths); }

// One point in (cost, inequality) objective space.
struct ObjectivePoint {
    double cost = 0.0;
    bool is_lex = false;
    double scalar = 0.0;
    std::vector<double> lex;  // descending-sorted workloads when is_lex

    static ObjectivePoint from_sorted(Measure m, double cost, const std::vector<double>& sorted) {
        if (m == Measure::LexMinMax) return {cost, true, 0.0, sorted};
        return {cost, false, evaluate_sorted(m, sorted), {}};
    }
};

// -1 / 0 / +1 on the inequality component only.
inline int ineq_cmp(const ObjectivePoint& a, const ObjectivePoint& b) {
    if (a.is_lex != b.is_lex) throw ValidationError("ineq_cmp: mixed objective forms");
    if (a.is_lex) {
        auto c = lex_compare(LexKey{a.lex}, LexKey{b.lex});
        return c == std::strong_ordering::less ? -1 : (c == std::strong_ordering::greater ? 1 : 0);
    }
    return a.scalar < b.scalar ? -1 : (a.scalar > b.scalar ? 1 : 0);
}

// Standard bi-objective dominance: a at least as good in both, better in one.
inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b, Measure) {
    int ic = ineq_cmp(a, b);
    if (a.cost > b.cost || ic > 0) return false;
    return a.cost < b.cost || ic < 0;
}

// Exactly the nondominated points of the input; equal-objective duplicates all
// retained; output in stable (cost, ineq, input-order) order.
inline std::vector<std::size_t> pareto_filter_indices(const std::vector<ObjectivePoint>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (pts[i].cost != pts[j].cost) return pts[i].cost < pts[j].cost;
        return ineq_cmp(pts[i], pts[j]) < 0;
    });
    std::vector<std::size_t> keep;
    std::size_t g = 0;
    const ObjectivePoint* best = nullptr;  // min ineq among strictly cheaper points
    while (g < order.size()) {
        std::size_t h = g;
        while (h < order.size() && pts[order[h]].cost == pts[order[g]].cost) ++h;
        const ObjectivePoint& gmin = pts[order[g]];  // group sorted by ineq
        if (best == nullptr || ineq_cmp(gmin, *best) < 0) {
            for (std::size_t k = g; k < h && ineq_cmp(pts[order[k]], gmin) == 0; ++k)
                keep.push_back(order[k]);
            best = &gmin;
        }
        g = h;
    }
    return keep;
}

// Nondominated archive maintained as a staircase: costs strictly increasing,
// inequality strictly decreasing; ties in both objectives share an entry.
class ParetoArchive {
public:
    explicit ParetoArchive(Measure m) : measure_(m) {}

    struct Entry {
        ObjectivePoint point;
        std::vector<Solution> solutions;
    };

    void insert(const Solution& s) {
        ObjectivePoint p = ObjectivePoint::from_sorted(measure_, s.cost, s.sorted_desc);
        // last entry with cost <= p.cost
        auto it = std::upper_bound(entries_.begin(), entries_.end(), p.cost,
                                   [](double c, const Entry& e) { return c < e.point.cost; });
        std::size_t start;
        if (it != entries_.begin()) {
            Entry& prev = *std::prev(it);
            int ic = ineq_cmp(prev.point, p);
            if (prev.point.cost == p.cost) {
                if (ic < 0) return;  // dominated
                if (ic == 0) {
                    prev.solutions.push_back(s);
                    return;
                }
                start = static_cast<std::size_t>(std::prev(it) - entries_.begin());
            } else {
                if (ic <= 0) return;  // dominated
                start = static_cast<std::size_t>(it - entries_.begin());
            }
        } else {
            start = 0;
        }
        // entries from start onward have cost >= p.cost; drop those with ineq >= p
        std::size_t stop = start;
        while (stop < entries_.size() && ineq_cmp(entries_[stop].point, p) >= 0) ++stop;
        Entry fresh{std::move(p), {s}};
        if (stop > start) {
            entries_[start] = std::move(fresh);
            entries_.erase(entries_.begin() + start + 1, entries_.begin() + stop);
        } else {
            entries_.insert(entries_.begin() + start, std::move(fresh));
        }
    }

    Measure measure() const { return measure_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& entries() { return entries_; }

private:
    Measure measure_;
    std::vector<Entry> entries_;
};

struct FrontEntry {
    Solution solution;
    ObjectivePoint point;
    std::string key;
    int lex_rank = 0;        // rank within a lexicographic front, 1-based
    bool tsp_optimal = false;
    bool inconsistent = false;
};

// Non-dominated solutions for one (instance, measure, mode), sorted by cost.
struct ParetoSet {
    Measure measure{};
    TourMode mode{};
    std::uint64_t instance_hash = 0;
    std::vector<FrontEntry> entries;
};

struct EnumerateOptions {
    bool exact = true;              // enumerate the complete solution space
    double max_cost_factor = 1.5;   // cost ceiling (x min cost) when not exact
};

namespace detail {

struct PartitionState {
    const Instance* inst;
    int v;
    std::vector<SubsetKey> blocks;
    std::vector<int> loads;
    long long remaining_demand = 0;
};

template <class F>
void partition_rec(PartitionState& st, int customer, F& emit) {
    const int n = st.inst->num_customers();
    if (customer == n) {
        if (static_cast<int>(st.blocks.size()) == st.v) emit(st.blocks);
        return;
    }
    const int nblocks = static_cast<int>(st.blocks.size());
    const int remaining = n - customer;
    // must still be able to open the missing blocks
    if (st.v - nblocks > remaining) return;
    // and to cover the remaining demand
    long long free_cap = static_cast<long long>(st.v - nblocks) * st.inst->capacity;
    for (int b = 0; b < nblocks; ++b) free_cap += st.inst->capacity - st.loads[b];
    if (free_cap < st.remaining_demand) return;

    const int demand = st.inst->demands[customer];
    st.remaining_demand -= demand;
    for (int b = 0; b < nblocks; ++b) {
        if (st.loads[b] + demand > st.inst->capacity) continue;
        st.blocks[b] |= SubsetKey(1) << customer;
        st.loads[b] += demand;
        partition_rec(st, customer + 1, emit);
        st.loads[b] -= demand;
        st.blocks[b] &= ~(SubsetKey(1) << customer);
    }
    if (nblocks < st.v) {
        // opening a new block with the lowest unassigned customer keeps the
        // enumeration canonical: each unordered partition appears once
        st.blocks.push_back(SubsetKey(1) << customer);
        st.loads.push_back(demand);
        partition_rec(st, customer + 1, emit);
        st.blocks.pop_back();
        st.loads.pop_back();
    }
    st.remaining_demand += demand;
}

} // namespace detail

// Every unordered partition of the customers into exactly v nonempty
// capacity-feasible blocks, emitted once in canonical order.
template <class F>
void enumerate_partitions(const Instance& inst, F&& emit) {
    inst.validate();
    if (inst.num_customers() > 32)
        throw SizeLimitError("enumerate_partitions: at most 32 customers supported");
    detail::PartitionState st{&inst, inst.vehicles, {}, {}, inst.total_demand()};
    detail::partition_rec(st, 0, emit);
}

inline std::vector<std::vector<SubsetKey>> enumerate_partitions(const Instance& inst) {
    std::vector<std::vector<SubsetKey>> out;
    enumerate_partitions(inst, [&](const std::vector<SubsetKey>& blocks) { out.push_back(blocks); });
    return out;
}

// Minimum total cost over all partitions with TSP-optimal tours.
inline double min_total_cost(const Instance& inst, const SubsetCache& cache) {
    double best = std::numeric_limits<double>::infinity();
    enumerate_partitions(inst, [&](const std::vector<SubsetKey>& blocks) {
        double c = 0.0;
        for (SubsetKey b : blocks) c += cache.tsp_optimal(b);
        best = std::min(best, c);
    });
    return best;
}

// Full solution-space sweep. Conventional mode walks every combination of
// per-block tour lengths; constrained mode visits each partition once with
// TSP-optimal lengths. The emit callback receives a reusable Solution.
template <class F>
void enumerate_solutions(const Instance& inst, const SubsetCache& cache, TourMode mode,
                         const EnumerateOptions& opts, F&& emit) {
    double ceiling = std::numeric_limits<double>::infinity();
    if (!opts.exact) ceiling = opts.max_cost_factor * min_total_cost(inst, cache);

    Solution sol;
    const int v = inst.vehicles;
    sol.lengths.resize(v);
    sol.sorted_desc.resize(v);

    std::vector<const TourLengthSet*> sets(v);
    std::vector<double> tsp_suffix(v + 1, 0.0);  // sum of tsp optima of blocks b..v-1

    auto finish = [&](const std::vector<SubsetKey>& blocks, double cost) {
        sol.blocks = blocks;
        sol.cost = cost;
        std::copy(sol.lengths.begin(), sol.lengths.end(), sol.sorted_desc.begin());
        std::sort(sol.sorted_desc.begin(), sol.sorted_desc.end(), std::greater<>());
        emit(sol);
    };

    enumerate_partitions(inst, [&](const std::vector<SubsetKey>& blocks) {
        for (int b = 0; b < v; ++b) sets[b] = &cache.at(blocks[b]);
        if (mode == TourMode::TspConstrained) {
            double cost = 0.0;
            for (int b = 0; b < v; ++b) {
                sol.lengths[b] = sets[b]->tsp_optimal;
                cost += sol.lengths[b];
            }
            if (cost <= ceiling) finish(blocks, cost);
            return;
        }
        for (int b = v - 1; b >= 0; --b) tsp_suffix[b] = tsp_suffix[b + 1] + sets[b]->tsp_optimal;
        if (tsp_suffix[0] > ceiling) return;
        // choose a length per block; lengths ascending, so a bound break is safe
        auto rec = [&](auto&& self, int b, double partial) -> void {
            if (b == v) {
                finish(blocks, partial);
                return;
            }
            for (double len : sets[b]->all_lengths) {
                if (partial + len + tsp_suffix[b + 1] > ceiling) break;
                sol.lengths[b] = len;
                self(self, b + 1, partial + len);
            }
        };
        rec(rec, 0, 0.0);
    });
}

struct FrontsResult {
    std::map<Measure, ParetoSet> fronts;
    std::vector<std::vector<double>> space;  // distinct sorted workload vectors (rounded)
    double min_cost = 0.0;
    std::size_t solution_count = 0;
};

inline ParetoSet finalize_front(ParetoArchive&& archive, TourMode mode) {
    ParetoSet set;
    set.measure = archive.measure();
    set.mode = mode;
    for (auto& e : archive.entries()) {
        std::stable_sort(e.solutions.begin(), e.solutions.end(),
                         [](const Solution& a, const Solution& b) {
                             return solution_key(a) < solution_key(b);
                         });
        for (auto& s : e.solutions) {
            FrontEntry fe;
            fe.key = solution_key(s);
            fe.point = e.point;
            fe.solution = std::move(s);
            set.entries.push_back(std::move(fe));
        }
    }
    if (set.measure == Measure::LexMinMax)
        for (std::size_t i = 0; i < set.entries.size(); ++i)
            set.entries[i].lex_rank = static_cast<int>(i) + 1;
    return set;
}

// Exact Pareto sets for several measures in one sweep of the solution space.
inline FrontsResult pareto_enumerate_all(const Instance& inst, const SubsetCache& cache,
                                         const std::vector<Measure>& measures, TourMode mode,
                                         const EnumerateOptions& opts = {},
                                         bool collect_space = false) {
    std::vector<ParetoArchive> archives;
    archives.reserve(measures.size());
    for (Measure m : measures) archives.emplace_back(m);

    FrontsResult res;
    res.min_cost = std::numeric_limits<double>::infinity();
    enumerate_solutions(inst, cache, mode, opts, [&](const Solution& s) {
        ++res.solution_count;
        res.min_cost = std::min(res.min_cost, s.cost);
        for (auto& a : archives) a.insert(s);
        if (collect_space) {
            std::vector<double> w(s.sorted_desc);
            for (double& x : w) x = round_key(x);
            res.space.push_back(std::move(w));
        }
    });
    if (collect_space) {
        std::sort(res.space.begin(), res.space.end());
        res.space.erase(std::unique(res.space.begin(), res.space.end()), res.space.end());
    }
    const std::uint64_t ih = instance_hash(inst);
    for (auto& a : archives) {
        ParetoSet set = finalize_front(std::move(a), mode);
        set.instance_hash = ih;
        res.fronts.emplace(set.measure, std::move(set));
    }
    return res;
}

// Exact Pareto set for a single (instance, measure, mode) triple.
inline ParetoSet pareto_enumerate(const Instance& inst, const SubsetCache& cache, Measure m,
                                  TourMode mode, const EnumerateOptions& opts = {}) {
    auto res = pareto_enumerate_all(inst, cache, {m}, mode, opts, false);
    return std::move(res.fronts.at(m));
}

} // namespace equityfront

#endif
