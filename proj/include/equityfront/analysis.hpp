#ifndef EQUITYFRONT_ANALYSIS_HPP
#define EQUITYFRONT_ANALYSIS_HPP

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "equityfront/frontier.hpp"

namespace equityfront {

using MeasureFronts = std::map<Measure, ParetoSet>;

// -1/0/+1 comparison of the inequality of two descending-sorted workloads.
inline int ineq_cmp_sorted(Measure m, const std::vector<double>& a, const std::vector<double>& b) {
    if (m == Measure::LexMinMax) {
        if (a.size() != b.size())
            throw ValidationError("ineq_cmp_sorted: vectors of different length");
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return -1;
            if (a[i] > b[i]) return 1;
        }
        return 0;
    }
    double va = evaluate_sorted(m, a), vb = evaluate_sorted(m, b);
    return va < vb ? -1 : (va > vb ? 1 : 0);
}

// Deduplicated sorted workload vectors of one (instance, mode) solution space.
struct SolutionSpaceIndex {
    std::vector<std::vector<double>> vectors;  // descending-sorted, rounded, distinct
    std::vector<double> costs;                 // component sums, aligned with vectors

    static SolutionSpaceIndex build(std::vector<std::vector<double>> space) {
        std::sort(space.begin(), space.end());
        space.erase(std::unique(space.begin(), space.end()), space.end());
        SolutionSpaceIndex idx;
        idx.vectors = std::move(space);
        idx.costs.reserve(idx.vectors.size());
        for (const auto& w : idx.vectors)
            idx.costs.push_back(std::accumulate(w.begin(), w.end(), 0.0));
        return idx;
    }

    std::size_t size() const { return vectors.size(); }
};

inline SolutionSpaceIndex build_space_index(const Instance& inst, const SubsetCache& cache,
                                            TourMode mode, const EnumerateOptions& opts = {}) {
    auto res = pareto_enumerate_all(inst, cache, {}, mode, opts, true);
    return SolutionSpaceIndex::build(std::move(res.space));
}

inline bool is_constant_sum(const SolutionSpaceIndex& idx, double tol = kDedupTol) {
    if (idx.costs.empty()) throw ValidationError("is_constant_sum: empty index");
    auto [lo, hi] = std::minmax_element(idx.costs.begin(), idx.costs.end());
    return *hi - *lo <= tol;
}

inline bool flag_tsp_optimal(const Solution& s, const SubsetCache& cache, double tol = kDedupTol) {
    for (std::size_t b = 0; b < s.blocks.size(); ++b)
        if (s.lengths[b] - cache.tsp_optimal(s.blocks[b]) > tol) return false;
    return true;
}

// Workload inconsistency: some feasible vector is componentwise no larger and
// strictly cheaper, yet ranked less equitable. Exhaustive scan of the index.
inline bool flag_inconsistent(const std::vector<double>& sorted_desc, Measure m,
                              const SolutionSpaceIndex& idx, double tol = kDedupTol) {
    const double cost = std::accumulate(sorted_desc.begin(), sorted_desc.end(), 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx.costs[i] >= cost - tol) continue;
        const auto& w = idx.vectors[i];
        bool below = true;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] > sorted_desc[k] + tol) { below = false; break; }
        if (below && ineq_cmp_sorted(m, sorted_desc, w) < 0) return true;
    }
    return false;
}

inline bool flag_inconsistent(const Solution& s, const SolutionSpaceIndex& idx, Measure m,
                              double tol = kDedupTol) {
    return flag_inconsistent(s.sorted_desc, m, idx, tol);
}

inline void set_tsp_flags(MeasureFronts& fronts, const SubsetCache& cache) {
    for (auto& [m, front] : fronts)
        for (auto& e : front.entries) e.tsp_optimal = flag_tsp_optimal(e.solution, cache);
}

// Inconsistency flags for every front entry via a streaming second pass over
// the solution space: nothing but the fronts themselves is kept in memory.
inline void set_inconsistency_flags(MeasureFronts& fronts, const Instance& inst,
                                    const SubsetCache& cache, TourMode mode,
                                    const EnumerateOptions& opts = {}) {
    struct Target {
        FrontEntry* fe;
        Measure m;
        bool done = false;
    };
    struct Query {
        const std::vector<double>* s;
        double cost;
        std::vector<Target> targets;
    };
    std::map<std::string, Query> by_key;
    for (auto& [m, front] : fronts)
        for (auto& e : front.entries) {
            e.inconsistent = false;
            Query& q = by_key[e.key];
            q.s = &e.solution.sorted_desc;
            q.cost = e.solution.cost;
            q.targets.push_back({&e, m});
        }
    std::vector<Query> queries;
    queries.reserve(by_key.size());
    for (auto& [k, q] : by_key) queries.push_back(std::move(q));
    std::sort(queries.begin(), queries.end(),
              [](const Query& a, const Query& b) { return (*a.s)[0] > (*b.s)[0]; });

    std::size_t remaining = 0;
    for (auto& q : queries) remaining += q.targets.size();

    enumerate_solutions(inst, cache, mode, opts, [&](const Solution& w) {
        if (remaining == 0) return;
        const auto& ws = w.sorted_desc;
        for (Query& q : queries) {
            // queries sorted by largest workload: once the candidate's max
            // exceeds it, no later query can be componentwise above
            if ((*q.s)[0] < ws[0] - kDedupTol) break;
            if (q.cost <= w.cost + kDedupTol) continue;
            bool below = true;
            for (std::size_t k = 1; k < ws.size(); ++k)
                if (ws[k] > (*q.s)[k] + kDedupTol) { below = false; break; }
            if (!below) continue;
            for (Target& t : q.targets) {
                if (t.done) continue;
                if (ineq_cmp_sorted(t.m, *q.s, ws) < 0) {
                    t.fe->inconsistent = true;
                    t.done = true;
                    --remaining;
                }
            }
        }
    });
}

// ---------------------------------------------------------------- agreement

struct AgreementCell {
    std::size_t intersection = 0;
    std::size_t union_size = 0;
    double share_a = 1.0;  // |A∩B| / |A|
    double share_b = 1.0;  // |A∩B| / |B|
    double jaccard = 1.0;
};

struct AgreementMatrix {
    std::vector<Measure> measures;
    std::vector<std::vector<AgreementCell>> cells;
    double share_all = 0.0;         // solutions found by every measure
    double share_unique_one = 0.0;  // found by exactly one
    double share_unique_two = 0.0;  // found by exactly two
};

inline AgreementMatrix agreement_matrix(const std::vector<const ParetoSet*>& fronts) {
    AgreementMatrix mat;
    std::uint64_t hash = 0;
    std::vector<std::set<std::string>> keys;
    for (const ParetoSet* f : fronts) {
        if (hash == 0) hash = f->instance_hash;
        else if (f->instance_hash != hash)
            throw ValidationError("agreement_matrix: fronts from different instances");
        mat.measures.push_back(f->measure);
        std::set<std::string> ks;
        for (const auto& e : f->entries) ks.insert(e.key);
        keys.push_back(std::move(ks));
    }
    const std::size_t M = fronts.size();
    mat.cells.assign(M, std::vector<AgreementCell>(M));
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j) {
            AgreementCell& c = mat.cells[i][j];
            std::vector<std::string> inter;
            std::set_intersection(keys[i].begin(), keys[i].end(), keys[j].begin(), keys[j].end(),
                                  std::back_inserter(inter));
            c.intersection = inter.size();
            c.union_size = keys[i].size() + keys[j].size() - c.intersection;
            c.share_a = keys[i].empty() ? 1.0 : double(c.intersection) / keys[i].size();
            c.share_b = keys[j].empty() ? 1.0 : double(c.intersection) / keys[j].size();
            c.jaccard = c.union_size == 0 ? 1.0 : double(c.intersection) / c.union_size;
        }
    std::map<std::string, int> found_by;
    for (const auto& ks : keys)
        for (const auto& k : ks) ++found_by[k];
    std::size_t all = 0, one = 0, two = 0;
    for (const auto& [k, cnt] : found_by) {
        if (cnt == static_cast<int>(M)) ++all;
        if (cnt == 1) ++one;
        if (cnt == 2) ++two;
    }
    if (!found_by.empty()) {
        mat.share_all = double(all) / found_by.size();
        mat.share_unique_one = double(one) / found_by.size();
        mat.share_unique_two = double(two) / found_by.size();
    }
    return mat;
}

// Elementwise average of per-instance agreement matrices (same measure lists).
inline AgreementMatrix average_agreement(const std::vector<AgreementMatrix>& mats) {
    if (mats.empty()) throw ValidationError("average_agreement: empty input");
    AgreementMatrix avg = mats.front();
    const std::size_t M = avg.measures.size();
    for (std::size_t k = 1; k < mats.size(); ++k) {
        if (mats[k].measures != avg.measures)
            throw ValidationError("average_agreement: measure lists differ");
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) {
                avg.cells[i][j].intersection += mats[k].cells[i][j].intersection;
                avg.cells[i][j].union_size += mats[k].cells[i][j].union_size;
                avg.cells[i][j].share_a += mats[k].cells[i][j].share_a;
                avg.cells[i][j].share_b += mats[k].cells[i][j].share_b;
                avg.cells[i][j].jaccard += mats[k].cells[i][j].jaccard;
            }
        avg.share_all += mats[k].share_all;
        avg.share_unique_one += mats[k].share_unique_one;
        avg.share_unique_two += mats[k].share_unique_two;
    }
    const double N = static_cast<double>(mats.size());
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j) {
            avg.cells[i][j].share_a /= N;
            avg.cells[i][j].share_b /= N;
            avg.cells[i][j].jaccard /= N;
        }
    avg.share_all /= N;
    avg.share_unique_one /= N;
    avg.share_unique_two /= N;
    return avg;
}

// ------------------------------------------------------- marginal cost stats

struct MarginalStats {
    double imbalance_ratio = 0.0;        // max/min tour length at the cost optimum
    bool step_present = false;           // a second TSP-optimal consistent solution exists
    double step_cost_increase = 0.0;     // its relative extra cost vs the optimum
    double step_range_reduction = 0.0;   // its relative range reduction vs the optimum
    double share_within_10pct = 0.0;     // front share with cost <= 1.1 x optimum
};

inline MarginalStats marginal_cost_stats(const ParetoSet& front) {
    if (front.entries.empty()) throw ValidationError("marginal_cost_stats: empty front");
    MarginalStats st;
    const auto& opt = front.entries.front();
    st.imbalance_ratio = opt.solution.sorted_desc.front() / opt.solution.sorted_desc.back();

    const double opt_cost = opt.solution.cost;
    std::size_t within = 0;
    for (const auto& e : front.entries)
        if (e.solution.cost <= 1.1 * opt_cost + kDedupTol) ++within;
    st.share_within_10pct = double(within) / front.entries.size();

    const FrontEntry* base = nullptr;
    const FrontEntry* next = nullptr;
    for (const auto& e : front.entries) {
        if (!e.tsp_optimal || e.inconsistent) continue;
        if (!base) { base = &e; continue; }
        if (e.solution.cost > base->solution.cost + kDedupTol) { next = &e; break; }
    }
    if (base && next) {
        auto range = [](const FrontEntry& e) {
            return e.solution.sorted_desc.front() - e.solution.sorted_desc.back();
        };
        st.step_present = true;
        st.step_cost_increase = (next->solution.cost - base->solution.cost) / base->solution.cost;
        double r0 = range(*base);
        st.step_range_reduction = r0 == 0.0 ? 0.0 : (r0 - range(*next)) / r0;
    }
    return st;
}

// ------------------------------------------------------------------ summaries

struct FrontStats {
    Measure measure{};
    std::size_t cardinality = 0;
    std::size_t tsp_optimal = 0;
    std::size_t consistent = 0;
    bool has_new = false;
    std::size_t fresh = 0;  // solutions absent from the conventional counterpart
};

inline FrontStats front_stats(const ParetoSet& front,
                              const std::set<std::string>* conventional_keys = nullptr) {
    FrontStats st;
    st.measure = front.measure;
    st.cardinality = front.entries.size();
    for (const auto& e : front.entries) {
        if (e.tsp_optimal) ++st.tsp_optimal;
        if (!e.inconsistent) ++st.consistent;
        if (conventional_keys && !conventional_keys->count(e.key)) ++st.fresh;
    }
    st.has_new = conventional_keys != nullptr;
    return st;
}

inline std::set<std::string> front_keys(const ParetoSet& front) {
    std::set<std::string> ks;
    for (const auto& e : front.entries) ks.insert(e.key);
    return ks;
}

struct SummaryRow {
    Measure measure{};
    std::size_t instances = 0;
    double avg_cardinality = 0.0;
    double avg_tsp_optimal = 0.0;
    double avg_consistent = 0.0;
    double avg_new = 0.0;
    // headline shares: ratio of averages
    double tsp_share = 0.0;
    double consistent_share = 0.0;
    double new_share = 0.0;
    // companions: mean of per-instance shares
    double tsp_share_mean = 0.0;
    double consistent_share_mean = 0.0;
    double new_share_mean = 0.0;
    bool has_new = false;
};

inline std::vector<SummaryRow> summarize(const std::vector<std::vector<FrontStats>>& per_instance) {
    if (per_instance.empty()) throw ValidationError("summarize: no instances");
    std::map<Measure, SummaryRow> rows;
    for (const auto& stats : per_instance)
        for (const auto& st : stats) {
            SummaryRow& r = rows[st.measure];
            r.measure = st.measure;
            ++r.instances;
            r.avg_cardinality += st.cardinality;
            r.avg_tsp_optimal += st.tsp_optimal;
            r.avg_consistent += st.consistent;
            r.avg_new += st.fresh;
            r.has_new = r.has_new || st.has_new;
            if (st.cardinality > 0) {
                r.tsp_share_mean += double(st.tsp_optimal) / st.cardinality;
                r.consistent_share_mean += double(st.consistent) / st.cardinality;
                r.new_share_mean += double(st.fresh) / st.cardinality;
            }
        }
    std::vector<SummaryRow> out;
    for (Measure m : kAllMeasures) {
        auto it = rows.find(m);
        if (it == rows.end()) continue;
        SummaryRow r = it->second;
        const double N = static_cast<double>(r.instances);
        r.avg_cardinality /= N;
        r.avg_tsp_optimal /= N;
        r.avg_consistent /= N;
        r.avg_new /= N;
        r.tsp_share = r.avg_cardinality == 0.0 ? 0.0 : r.avg_tsp_optimal / r.avg_cardinality;
        r.consistent_share = r.avg_cardinality == 0.0 ? 0.0 : r.avg_consistent / r.avg_cardinality;
        r.new_share = r.avg_cardinality == 0.0 ? 0.0 : r.avg_new / r.avg_cardinality;
        r.tsp_share_mean /= N;
        r.consistent_share_mean /= N;
        r.new_share_mean /= N;
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------------ theorems

struct TheoremReport {
    std::size_t t1_solutions = 0, t1_violations = 0;  // monotonic fronts all TSP-optimal
    std::size_t t3_solutions = 0, t3_violations = 0;  // monotonic fronts never inconsistent
    std::size_t t5_instances = 0, t5_solutions = 0, t5_violations = 0;
    std::size_t subset_fronts = 0, subset_violations = 0;  // MinMax front within Lex front
    std::size_t spaces_probed = 0, constant_sum_spaces = 0;
    std::size_t p3_witnesses = 0;  // inconsistent solutions in constrained non-monotonic fronts
    std::vector<std::string> violation_notes;
    std::vector<std::string> witness_notes;

    bool ok() const {
        return t1_violations == 0 && t3_violations == 0 && t5_violations == 0 &&
               subset_violations == 0;
    }
};

namespace detail {

// Fenwick tree answering prefix-maximum queries under an arbitrary ordering.
template <class V, class Less>
class PrefixMax {
public:
    PrefixMax(std::size_t n, V lowest, Less less)
        : t_(n + 1, lowest), lowest_(std::move(lowest)), less_(std::move(less)) {}

    void update(std::size_t i, const V& v) {
        for (++i; i < t_.size(); i += i & (~i + 1))
            if (less_(t_[i], v)) t_[i] = v;
    }

    V query(std::size_t i) const {  // max over positions [0, i]
        V r = lowest_;
        for (++i; i > 0; i -= i & (~i + 1))
            if (less_(r, t_[i])) r = t_[i];
        return r;
    }

private:
    std::vector<V> t_;
    V lowest_;
    Less less_;
};

} // namespace detail

// Exhaustive two-vehicle check: every solution costlier than the lexicographic
// minimum is inconsistent or dominated by it, under every measure. Uses an
// offline sweep so the quadratic witness search collapses to O(N log N).
inline std::size_t verify_theorem5(const SolutionSpaceIndex& idx,
                                   const std::vector<Measure>& measures,
                                   std::size_t& solutions_checked,
                                   std::vector<std::string>* notes = nullptr) {
    if (idx.size() == 0) throw ValidationError("verify_theorem5: empty index");
    if (idx.vectors.front().size() != 2)
        throw ValidationError("verify_theorem5: only defined for v=2 spaces");

    // vectors sorted ascending by (max, min): the head is the lexicographic minimum
    const std::vector<double>& x = idx.vectors.front();
    const double x_cost = idx.costs.front();
    const std::size_t N = idx.size();

    std::vector<double> bs;
    bs.reserve(N);
    for (const auto& w : idx.vectors) bs.push_back(w[1]);
    std::vector<double> branks(bs);
    std::sort(branks.begin(), branks.end());
    branks.erase(std::unique(branks.begin(), branks.end()), branks.end());
    auto rank = [&](double b) {
        return std::size_t(std::lower_bound(branks.begin(), branks.end(), b) - branks.begin());
    };

    solutions_checked = 0;
    for (std::size_t i = 0; i < N; ++i)
        if (idx.costs[i] > x_cost + kDedupTol) ++solutions_checked;

    std::size_t violations = 0;
    for (Measure m : measures) {
        // inequality of a v=2 vector encoded as an ordered pair: the scalar
        // value for scalar measures, the vector itself for the lex measure
        using V = std::pair<double, double>;
        const bool lex = m == Measure::LexMinMax;
        auto quality = [&](std::size_t i) -> V {
            if (lex) return {idx.vectors[i][0], idx.vectors[i][1]};
            return {evaluate_sorted(m, idx.vectors[i]), 0.0};
        };
        auto less = [](const V& p, const V& q) { return p < q; };
        detail::PrefixMax<V, decltype(less)> fen(
            branks.size(), {-std::numeric_limits<double>::infinity(), 0.0}, less);
        const V x_q = quality(0);

        std::size_t g = 0;
        while (g < N) {
            std::size_t h = g;
            while (h < N && idx.vectors[h][0] == idx.vectors[g][0]) ++h;
            for (std::size_t i = g; i < h; ++i) fen.update(rank(idx.vectors[i][1]), quality(i));
            for (std::size_t i = g; i < h; ++i) {
                if (idx.costs[i] <= x_cost + kDedupTol) continue;
                const V yq = quality(i);
                if (!less(yq, x_q)) continue;  // dominated by x (cost is strictly lower)
                // inconsistency witness: some w <= y componentwise is worse
                if (less(yq, fen.query(rank(idx.vectors[i][1])))) continue;
                ++violations;
                if (notes && notes->size() < 20) {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf),
                                  "theorem5 violation: measure=%s y=(%.6f,%.6f)",
                                  measure_name(m).c_str(), idx.vectors[i][0], idx.vectors[i][1]);
                    notes->push_back(buf);
                }
            }
            g = h;
        }
    }
    return violations;
}

// Accumulates theorem and observation checks across an instance batch.
class TheoremVerifier {
public:
    void check_fronts(const std::string& instance_name, const MeasureFronts& fronts,
                      TourMode mode) {
        for (const auto& [m, front] : fronts) {
            if (is_monotonic(m)) {
                for (const auto& e : front.entries) {
                    ++rep_.t1_solutions;
                    ++rep_.t3_solutions;
                    if (!e.tsp_optimal) {
                        ++rep_.t1_violations;
                        note("theorem1 violation: " + instance_name + " " + measure_name(m) +
                             " " + mode_name(mode) + " key=" + e.key);
                    }
                    if (e.inconsistent) {
                        ++rep_.t3_violations;
                        note("theorem3 violation: " + instance_name + " " + measure_name(m) +
                             " " + mode_name(mode) + " key=" + e.key);
                    }
                }
            } else if (mode == TourMode::TspConstrained) {
                for (const auto& e : front.entries)
                    if (e.inconsistent) {
                        ++rep_.p3_witnesses;
                        if (rep_.witness_notes.size() < 20)
                            rep_.witness_notes.push_back("inconsistent constrained solution: " +
                                                         instance_name + " " + measure_name(m) +
                                                         " key=" + e.key);
                    }
            }
        }
        auto mm = fronts.find(Measure::MinMax);
        auto lx = fronts.find(Measure::LexMinMax);
        if (mm != fronts.end() && lx != fronts.end()) {
            ++rep_.subset_fronts;
            auto lex_keys = front_keys(lx->second);
            for (const auto& e : mm->second.entries)
                if (!lex_keys.count(e.key)) {
                    ++rep_.subset_violations;
                    note("subset violation: " + instance_name + " " + mode_name(mode) +
                         " minmax key " + e.key + " not in lexminmax front");
                }
        }
    }

    void check_space(const std::string& instance_name, const SolutionSpaceIndex& idx,
                     int vehicles, const std::vector<Measure>& measures) {
        ++rep_.spaces_probed;
        if (is_constant_sum(idx)) {
            ++rep_.constant_sum_spaces;
            if (rep_.witness_notes.size() < 20)
                rep_.witness_notes.push_back("constant-sum space: " + instance_name);
        }
        if (vehicles == 2) {
            ++rep_.t5_instances;
            std::size_t checked = 0;
            std::size_t v = verify_theorem5(idx, measures, checked, &rep_.violation_notes);
            rep_.t5_solutions += checked;
            rep_.t5_violations += v;
        }
    }

    const TheoremReport& report() const { return rep_; }

private:
    void note(const std::string& s) {
        if (rep_.violation_notes.size() < 50) rep_.violation_notes.push_back(s);
    }

    TheoremReport rep_;
};

} // namespace equityfront

#endif
