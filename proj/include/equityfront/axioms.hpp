#ifndef EQUITYFRONT_AXIOMS_HPP
#define EQUITYFRONT_AXIOMS_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "equityfront/measures.hpp"

namespace equityfront {

enum class Axiom {
    InequalityRelevance,
    Transitivity,
    ScaleInvariance,
    TranslationInvariance,
    PopulationIndependence,
    Anonymity,
    Monotonicity,
    PigouDalton,
};

inline constexpr std::array<Axiom, 8> kAllAxioms = {
    Axiom::InequalityRelevance, Axiom::Transitivity,        Axiom::ScaleInvariance,
    Axiom::TranslationInvariance, Axiom::PopulationIndependence, Axiom::Anonymity,
    Axiom::Monotonicity,        Axiom::PigouDalton,
};

inline std::string axiom_name(Axiom a) {
    switch (a) {
        case Axiom::InequalityRelevance: return "inequality_relevance";
        case Axiom::Transitivity: return "transitivity";
        case Axiom::ScaleInvariance: return "scale_invariance";
        case Axiom::TranslationInvariance: return "translation_invariance";
        case Axiom::PopulationIndependence: return "population_independence";
        case Axiom::Anonymity: return "anonymity";
        case Axiom::Monotonicity: return "monotonicity";
        case Axiom::PigouDalton: return "pigou_dalton";
    }
    return "?";
}

struct AxiomWitness {
    std::vector<double> x;
    std::vector<double> transformed;
    double value_before = 0.0;
    double value_after = 0.0;
};

// Verdict for one (measure, axiom) cell, checked against the expected flag.
struct AxiomVerdict {
    Measure measure{};
    Axiom axiom{};
    std::string expected;     // "yes", "no", "weak", "weak+", "strong", "by-construction"
    std::string observed;     // "holds", "counterexample", "by-construction"
    bool matches = false;
    std::optional<AxiomWitness> witness;  // the counterexample, when one was found
    std::string note;
};

struct AxiomReport {
    Measure measure{};
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomVerdict> verdicts;

    bool all_match() const {
        return std::all_of(verdicts.begin(), verdicts.end(),
                           [](const AxiomVerdict& v) { return v.matches; });
    }
};

namespace detail {

constexpr double kInvarianceRelTol = 1e-9;   // invariance claims
constexpr double kMonotoneSlack = 1e-12;     // "never increases" claims

// Measure value generalized so lex can share the comparisons: scalar
// measures compare by value, lex by its sorted key.
struct IValue {
    bool is_lex = false;
    double scalar = 0.0;
    LexKey key;
};

inline IValue ivalue(Measure m, const WorkloadVector& w) {
    if (m == Measure::LexMinMax) return {true, 0.0, lex_key(w)};
    return {false, evaluate(m, w), {}};
}

inline int icmp(const IValue& a, const IValue& b) {
    if (a.is_lex) {
        auto c = lex_compare(a.key, b.key);
        return c == std::strong_ordering::less ? -1 : (c == std::strong_ordering::greater ? 1 : 0);
    }
    if (a.scalar < b.scalar) return -1;
    if (a.scalar > b.scalar) return 1;
    return 0;
}

inline double display(const IValue& v) { return v.is_lex ? v.key.sorted_desc.front() : v.scalar; }

inline bool approx_equal(const IValue& a, const IValue& b) {
    if (a.is_lex) {
        for (std::size_t i = 0; i < a.key.sorted_desc.size(); ++i) {
            double u = a.key.sorted_desc[i], v = b.key.sorted_desc[i];
            if (std::abs(u - v) > kInvarianceRelTol * std::max({1.0, std::abs(u), std::abs(v)}))
                return false;
        }
        return true;
    }
    return std::abs(a.scalar - b.scalar) <=
           kInvarianceRelTol * std::max({1.0, std::abs(a.scalar), std::abs(b.scalar)});
}

struct Gen {
    std::mt19937_64 rng;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return lo + to_unit_interval(rng()) * (hi - lo);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    // random vector with n in [2,8], outcomes in (0,100]
    WorkloadVector vector() {
        int n = uniform_int(2, 8);
        std::vector<double> x(n);
        for (double& v : x) v = 100.0 - to_unit_interval(rng()) * 100.0;
        return WorkloadVector(std::move(x));
    }
};

} // namespace detail

// Randomized check of the eight axioms for one measure. Verdicts are compared
// against the measure's declared trait flags; a mismatch is reported in the
// verdict object, never thrown.
inline AxiomReport check_axioms(Measure m, int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("check_axioms: trials must be >= 1");
    using detail::IValue;
    using detail::icmp;
    using detail::ivalue;

    AxiomReport report{m, trials, seed, {}};
    const MeasureTraits t = traits(m);
    detail::Gen gen(seed);

    auto add = [&](Axiom a, const std::string& expected, bool found_counterexample,
                   std::optional<AxiomWitness> w, const std::string& note = "") {
        AxiomVerdict v;
        v.measure = m;
        v.axiom = a;
        v.expected = expected;
        v.observed = found_counterexample ? "counterexample" : "holds";
        bool expect_holds = expected != "no";
        v.matches = expect_holds ? !found_counterexample : found_counterexample;
        v.witness = std::move(w);
        v.note = note;
        report.verdicts.push_back(std::move(v));
    };

    auto witness = [](const WorkloadVector& x, const WorkloadVector& x2, const IValue& a,
                      const IValue& b) {
        return AxiomWitness{x.outcomes, x2.outcomes, detail::display(a), detail::display(b)};
    };

    // Axiom 1: constant vectors give 0, non-constant give > 0.
    {
        std::optional<AxiomWitness> w;
        for (int i = 0; i < trials && !w; ++i) {
            double c = gen.uniform(1.0, 100.0);
            int n = gen.uniform_int(2, 8);
            WorkloadVector constant(std::vector<double>(n, c));
            IValue vc = ivalue(m, constant);
            // equal outcomes must map (numerically) to zero; lex keys cannot
            double ctol = detail::kInvarianceRelTol * std::max(1.0, c);
            bool zero = vc.is_lex ? false : std::abs(vc.scalar) <= ctol;
            if (!zero) {
                w = witness(constant, constant, vc, vc);
                continue;
            }
            WorkloadVector x = gen.vector();
            bool is_const = std::all_of(x.outcomes.begin(), x.outcomes.end(),
                                        [&](double v) { return v == x.outcomes[0]; });
            if (is_const) continue;
            IValue vx = ivalue(m, x);
            if (!vx.is_lex && !(vx.scalar > ctol)) w = witness(x, x, vx, vx);
        }
        add(Axiom::InequalityRelevance, t.inequality_relevant ? "yes" : "no", w.has_value(), w);
    }

    // Axiom 2: inherited from the total order on reals / lexicographic order.
    {
        AxiomVerdict v;
        v.measure = m;
        v.axiom = Axiom::Transitivity;
        v.expected = "yes";
        v.observed = "by-construction";
        v.matches = true;
        v.note = "total order on the index values; no randomized test needed";
        report.verdicts.push_back(std::move(v));
    }

    // Axiom 3: scaling by lambda > 0 (negative lambda leaves the model domain).
    {
        std::optional<AxiomWitness> w;
        for (int i = 0; i < trials && !w; ++i) {
            WorkloadVector x = gen.vector();
            for (double lambda : {0.5, 2.0, 7.3}) {
                WorkloadVector sx = x;
                for (double& v : sx.outcomes) v *= lambda;
                IValue a = ivalue(m, x), b = ivalue(m, sx);
                if (!detail::approx_equal(a, b)) {
                    w = witness(x, sx, a, b);
                    break;
                }
            }
        }
        add(Axiom::ScaleInvariance, t.scale_invariant ? "yes" : "no", w.has_value(), w);
    }

    // Axiom 4: translation by alpha along the all-ones vector.
    {
        std::optional<AxiomWitness> w;
        for (int i = 0; i < trials && !w; ++i) {
            WorkloadVector x = gen.vector();
            double mn = *std::min_element(x.outcomes.begin(), x.outcomes.end());
            for (double alpha : {-mn / 2.0, 1.0, 13.7}) {
                WorkloadVector tx = x;
                for (double& v : tx.outcomes) v += alpha;
                IValue a = ivalue(m, x), b = ivalue(m, tx);
                if (!detail::approx_equal(a, b)) {
                    w = witness(x, tx, a, b);
                    break;
                }
            }
        }
        add(Axiom::TranslationInvariance, t.translation_invariant ? "yes" : "no", w.has_value(), w);
    }

    // Axiom 5: replication k in {2,3}. Lex is checked through its comparator.
    {
        std::optional<AxiomWitness> w;
        for (int i = 0; i < trials && !w; ++i) {
            WorkloadVector x = gen.vector();
            WorkloadVector y = gen.vector();
            for (int k : {2, 3}) {
                auto replicate = [k](const WorkloadVector& v) {
                    std::vector<double> r;
                    for (int c = 0; c < k; ++c)
                        r.insert(r.end(), v.outcomes.begin(), v.outcomes.end());
                    return WorkloadVector(std::move(r));
                };
                if (m == Measure::LexMinMax) {
                    if (y.size() != x.size()) continue;
                    auto before = lex_compare(lex_key(x), lex_key(y));
                    auto after = lex_compare(lex_key(replicate(x)), lex_key(replicate(y)));
                    if (before != after) {
                        w = AxiomWitness{x.outcomes, y.outcomes, 0.0, 0.0};
                        break;
                    }
                } else {
                    IValue a = ivalue(m, x), b = ivalue(m, replicate(x));
                    if (!detail::approx_equal(a, b)) {
                        w = witness(x, replicate(x), a, b);
                        break;
                    }
                }
            }
        }
        add(Axiom::PopulationIndependence, t.population_independent ? "yes" : "no", w.has_value(), w);
    }

    // Axiom 6: random permutations leave the value unchanged exactly.
    {
        std::optional<AxiomWitness> w;
        for (int i = 0; i < trials && !w; ++i) {
            WorkloadVector x = gen.vector();
            WorkloadVector px = x;
            std::shuffle(px.outcomes.begin(), px.outcomes.end(), gen.rng);
            // evaluate sorts internally, so permutation invariance is exact
            IValue a = ivalue(m, x), b = ivalue(m, px);
            if (icmp(a, b) != 0) w = witness(x, px, a, b);
        }
        add(Axiom::Anonymity, t.anonymous ? "yes" : "no", w.has_value(), w);
    }

    // Axiom 7: elementwise increase delta_i >= 0 with at least one strict.
    {
        std::optional<AxiomWitness> weak_violation;
        std::optional<AxiomWitness> strict_violation;
        for (int i = 0; i < trials; ++i) {
            WorkloadVector x = gen.vector();
            WorkloadVector x2 = x;
            int strict_at = gen.uniform_int(0, x.size() - 1);
            for (int k = 0; k < x.size(); ++k) {
                double d = (k == strict_at || gen.uniform(0, 1) < 0.5) ? gen.uniform(0.0, 20.0) : 0.0;
                if (k == strict_at && d == 0.0) d = 1.0;
                x2.outcomes[k] += d;
            }
            IValue a = ivalue(m, x), b = ivalue(m, x2);
            if (!weak_violation && !a.is_lex && b.scalar < a.scalar - detail::kMonotoneSlack)
                weak_violation = witness(x, x2, a, b);
            if (!weak_violation && a.is_lex && icmp(b, a) < 0) weak_violation = witness(x, x2, a, b);
            if (!strict_violation && t.monotonic == Monotonicity::Strong && icmp(b, a) == 0)
                strict_violation = witness(x, x2, a, b);
            if (weak_violation && (t.monotonic != Monotonicity::Strong || strict_violation)) break;
        }
        std::string expected = t.monotonic == Monotonicity::None   ? "no"
                               : t.monotonic == Monotonicity::Weak ? "weak"
                                                                   : "strong";
        bool counterexample = weak_violation.has_value() || strict_violation.has_value();
        add(Axiom::Monotonicity, expected, counterexample,
            weak_violation ? weak_violation : strict_violation,
            expected == "strong" ? "strictness verified on every trial" : "");
    }

    // Axiom 8: progressive transfers with random legal delta.
    {
        std::optional<AxiomWitness> weak_violation;    // index increased
        std::optional<AxiomWitness> strict_violation;  // strong/weak+ cell: no strict decrease
        for (int i = 0; i < trials; ++i) {
            WorkloadVector x = gen.vector();
            int lo = 0, hi = 0;
            for (int k = 1; k < x.size(); ++k) {
                if (x.outcomes[k] < x.outcomes[lo]) lo = k;
                if (x.outcomes[k] > x.outcomes[hi]) hi = k;
            }
            // random unequal pair; fall back to the extremes
            int a_idx = gen.uniform_int(0, x.size() - 1);
            int b_idx = gen.uniform_int(0, x.size() - 1);
            if (x.outcomes[a_idx] == x.outcomes[b_idx]) { a_idx = lo; b_idx = hi; }
            if (x.outcomes[a_idx] == x.outcomes[b_idx]) continue;  // constant vector
            int i_small = x.outcomes[a_idx] < x.outcomes[b_idx] ? a_idx : b_idx;
            int j_large = i_small == a_idx ? b_idx : a_idx;
            double gap = x.outcomes[j_large] - x.outcomes[i_small];
            double delta = gen.uniform(0.0, gap);
            if (delta >= gap) continue;
            WorkloadVector x2 = pd_transfer(x, i_small, j_large, delta);

            IValue a = ivalue(m, x), b = ivalue(m, x2);
            bool increased = a.is_lex ? icmp(b, a) > 0 : b.scalar > a.scalar + detail::kMonotoneSlack;
            if (!weak_violation && increased) weak_violation = witness(x, x2, a, b);

            if (delta > 0.0) {
                bool must_be_strict =
                    t.pd == PdStrength::Strong ||
                    (t.pd == PdStrength::WeakPlus &&
                     x.outcomes[i_small] < x.mean() && x.outcomes[j_large] > x.mean());
                if (!strict_violation && must_be_strict && icmp(b, a) >= 0)
                    strict_violation = witness(x, x2, a, b);
            }
        }
        std::string expected = t.pd == PdStrength::Weak       ? "weak"
                               : t.pd == PdStrength::WeakPlus ? "weak+"
                               : t.pd == PdStrength::Strong   ? "strong"
                                                              : "no";
        bool counterexample = weak_violation.has_value() || strict_violation.has_value();
        add(Axiom::PigouDalton, expected, counterexample,
            weak_violation ? weak_violation : strict_violation);
    }

    return report;
}

inline nlohmann::json axiom_report_to_json(const AxiomReport& r) {
    nlohmann::json j;
    j["measure"] = measure_name(r.measure);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["all_match"] = r.all_match();
    auto verdicts = nlohmann::json::array();
    for (const auto& v : r.verdicts) {
        nlohmann::json jv;
        jv["axiom"] = axiom_name(v.axiom);
        jv["expected"] = v.expected;
        jv["observed"] = v.observed;
        jv["matches"] = v.matches;
        if (!v.note.empty()) jv["note"] = v.note;
        if (v.witness) {
            jv["witness"] = {{"x", v.witness->x},
                             {"transformed", v.witness->transformed},
                             {"value_before", v.witness->value_before},
                             {"value_after", v.witness->value_after}};
        }
        verdicts.push_back(std::move(jv));
    }
    j["verdicts"] = std::move(verdicts);
    return j;
}

} // namespace equityfront

#endif
