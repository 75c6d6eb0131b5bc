#ifndef EQUITYFRONT_MEASURES_HPP
#define EQUITYFRONT_MEASURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equityfront/common.hpp"

namespace equityfront {

// Vector of tour workloads x_1..x_n. Anonymity: all operations are
// permutation-invariant unless an explicitly sorted view is requested.
struct WorkloadVector {
    std::vector<double> outcomes;

    WorkloadVector() = default;
    explicit WorkloadVector(std::vector<double> v) : outcomes(std::move(v)) { validate(); }
    WorkloadVector(std::initializer_list<double> v) : outcomes(v) { validate(); }

    int size() const { return static_cast<int>(outcomes.size()); }

    double mean() const {
        return std::accumulate(outcomes.begin(), outcomes.end(), 0.0) / outcomes.size();
    }

    void validate() const {
        if (outcomes.size() < 2)
            throw ValidationError("workload vector needs at least 2 outcomes");
        for (double x : outcomes)
            if (!(x >= 0.0)) throw ValidationError("workloads must be nonnegative");
    }
};

// Outcomes sorted in non-increasing order; the lexicographic min-max objective.
struct LexKey {
    std::vector<double> sorted_desc;

    friend bool operator==(const LexKey&, const LexKey&) = default;
};

enum class Measure {
    MinMax,
    LexMinMax,
    Range,
    MeanAbsDev,
    StdDev,
    Gini,
    CoeffVar,
    MeanScaledGini,
};

// The six measures of the paper's comparison; the variants are extras.
inline constexpr std::array<Measure, 6> kCoreMeasures = {
    Measure::MinMax, Measure::LexMinMax, Measure::Range,
    Measure::MeanAbsDev, Measure::StdDev, Measure::Gini,
};

inline constexpr std::array<Measure, 8> kAllMeasures = {
    Measure::MinMax,  Measure::LexMinMax, Measure::Range,    Measure::MeanAbsDev,
    Measure::StdDev,  Measure::Gini,      Measure::CoeffVar, Measure::MeanScaledGini,
};

enum class Monotonicity { None, Weak, Strong };
enum class PdStrength { None, Weak, WeakPlus, Strong };

struct MeasureTraits {
    Monotonicity monotonic;
    PdStrength pd;
    bool scale_invariant;
    bool translation_invariant;
    bool inequality_relevant;
    bool population_independent;
    bool anonymous;
};

inline constexpr MeasureTraits traits(Measure m) {
    switch (m) {
        case Measure::MinMax:
            return {Monotonicity::Weak, PdStrength::Weak, false, false, false, true, true};
        case Measure::LexMinMax:
            return {Monotonicity::Strong, PdStrength::Strong, false, false, false, true, true};
        case Measure::Range:
            return {Monotonicity::None, PdStrength::Weak, false, true, true, true, true};
        case Measure::MeanAbsDev:
            return {Monotonicity::None, PdStrength::WeakPlus, false, true, true, true, true};
        case Measure::StdDev:
            return {Monotonicity::None, PdStrength::Strong, false, true, true, true, true};
        case Measure::Gini:
            return {Monotonicity::None, PdStrength::Strong, true, false, true, true, true};
        case Measure::CoeffVar:
            return {Monotonicity::None, PdStrength::Strong, true, false, true, true, true};
        case Measure::MeanScaledGini:
            return {Monotonicity::None, PdStrength::Strong, false, true, true, true, true};
    }
    return {};
}

inline bool is_monotonic(Measure m) { return traits(m).monotonic != Monotonicity::None; }

inline std::string measure_name(Measure m) {
    switch (m) {
        case Measure::MinMax: return "minmax";
        case Measure::LexMinMax: return "lexminmax";
        case Measure::Range: return "range";
        case Measure::MeanAbsDev: return "mad";
        case Measure::StdDev: return "stddev";
        case Measure::Gini: return "gini";
        case Measure::CoeffVar: return "cv";
        case Measure::MeanScaledGini: return "meangini";
    }
    return "?";
}

inline std::optional<Measure> parse_measure(const std::string& s) {
    for (Measure m : kAllMeasures)
        if (measure_name(m) == s) return m;
    return std::nullopt;
}

namespace detail {

inline double gini_sum(const std::vector<double>& x) {
    // sum_{i<j} |x_i - x_j| computed on a sorted copy:
    // equals sum_i (2i - n + 1) * x_(i) with x ascending.
    std::vector<double> s(x);
    std::sort(s.begin(), s.end());
    const int n = static_cast<int>(s.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += (2.0 * i - n + 1.0) * s[i];
    return acc;
}

} // namespace detail

// Measure value computed directly on a descending-sorted workload vector;
// the allocation-free workhorse of the enumeration loops.
inline double evaluate_sorted(Measure m, const std::vector<double>& s) {
    const int n = static_cast<int>(s.size());
    switch (m) {
        case Measure::MinMax:
            return s.front();
        case Measure::Range:
            return s.front() - s.back();
        default:
            break;
    }
    double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
    switch (m) {
        case Measure::MeanAbsDev: {
            double acc = 0.0;
            for (double v : s) acc += std::abs(v - mean);
            return acc / n;
        }
        case Measure::StdDev: {
            double acc = 0.0;
            for (double v : s) acc += (v - mean) * (v - mean);
            return std::sqrt(acc / n);
        }
        case Measure::Gini:
        case Measure::MeanScaledGini: {
            double acc = 0.0;  // sum_{i<j} |s_i - s_j| on descending data
            for (int i = 0; i < n; ++i) acc += (n - 1.0 - 2.0 * i) * s[i];
            if (m == Measure::MeanScaledGini) return acc / (static_cast<double>(n) * n);
            // all-zero vector: perfectly equal by convention (the formula is 0/0)
            return mean == 0.0 ? 0.0 : acc / (static_cast<double>(n) * n * mean);
        }
        case Measure::CoeffVar: {
            double acc = 0.0;
            for (double v : s) acc += (v - mean) * (v - mean);
            return mean == 0.0 ? 0.0 : std::sqrt(acc / n) / mean;
        }
        case Measure::LexMinMax:
            throw std::logic_error("LexMinMax has no scalar value; use lex_key");
        default:
            return 0.0;
    }
}

// Scalar inequality value. Undefined for LexMinMax (use lex_key / lex_compare).
// Sorts a copy first, making the result exactly permutation-invariant.
inline double evaluate(Measure m, const WorkloadVector& w) {
    std::vector<double> s(w.outcomes);
    std::sort(s.begin(), s.end(), std::greater<>());
    return evaluate_sorted(m, s);
}

inline LexKey lex_key(const WorkloadVector& w) {
    LexKey k{w.outcomes};
    std::sort(k.sorted_desc.begin(), k.sorted_desc.end(), std::greater<>());
    return k;
}

// Less means a is preferable: smaller worst outcome, ties broken on the next.
inline std::strong_ordering lex_compare(const LexKey& a, const LexKey& b) {
    if (a.sorted_desc.size() != b.sorted_desc.size())
        throw ValidationError("lex_compare: keys of different length are incomparable");
    for (std::size_t i = 0; i < a.sorted_desc.size(); ++i) {
        if (a.sorted_desc[i] < b.sorted_desc[i]) return std::strong_ordering::less;
        if (a.sorted_desc[i] > b.sorted_desc[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// Progressive transfer of delta from the larger outcome j to the smaller i.
inline WorkloadVector pd_transfer(const WorkloadVector& w, int i, int j, double delta) {
    if (i == j) throw ValidationError("pd_transfer: i and j must differ");
    if (!(delta >= 0.0) || !(delta < w.outcomes.at(j) - w.outcomes.at(i)))
        throw ValidationError("pd_transfer: need 0 <= delta < x_j - x_i");
    WorkloadVector out = w;
    out.outcomes[i] += delta;
    out.outcomes[j] -= delta;
    return out;
}

// No precondition check; used for counterexample search over regressive transfers.
inline WorkloadVector pd_transfer_unchecked(const WorkloadVector& w, int i, int j, double delta) {
    WorkloadVector out = w;
    out.outcomes[i] += delta;
    out.outcomes[j] -= delta;
    return out;
}

} // namespace equityfront

#endif
