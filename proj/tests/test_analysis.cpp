#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "equityfront/reports.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

using namespace equityfront;
namespace fs = std::filesystem;

namespace {

SolutionSpaceIndex make_index(std::vector<std::vector<double>> vectors) {
    for (auto& v : vectors) std::sort(v.begin(), v.end(), std::greater<>());
    return SolutionSpaceIndex::build(std::move(vectors));
}

FrontEntry make_entry(std::vector<SubsetKey> blocks, std::vector<double> lengths,
                      Measure m = Measure::Range) {
    FrontEntry e;
    e.solution.blocks = std::move(blocks);
    e.solution.lengths = std::move(lengths);
    e.solution.cost = std::accumulate(e.solution.lengths.begin(), e.solution.lengths.end(), 0.0);
    e.solution.sorted_desc = e.solution.lengths;
    std::sort(e.solution.sorted_desc.begin(), e.solution.sorted_desc.end(), std::greater<>());
    e.point = ObjectivePoint::from_sorted(m, e.solution.cost, e.solution.sorted_desc);
    e.key = solution_key(e.solution);
    e.tsp_optimal = true;
    return e;
}

ParetoSet stub_front(Measure m, std::vector<std::string> keys, std::uint64_t hash = 99) {
    ParetoSet f;
    f.measure = m;
    f.instance_hash = hash;
    for (auto& k : keys) {
        FrontEntry e;
        e.key = std::move(k);
        f.entries.push_back(std::move(e));
    }
    return f;
}

// independent quadratic re-statement of the two-vehicle theorem check
std::size_t naive_theorem5(const SolutionSpaceIndex& idx, const std::vector<Measure>& measures) {
    const auto& x = idx.vectors.front();
    const double x_cost = idx.costs.front();
    std::size_t violations = 0;
    for (Measure m : measures) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx.costs[i] <= x_cost + kDedupTol) continue;
            if (ineq_cmp_sorted(m, idx.vectors[i], x) >= 0) continue;  // dominated by x
            bool inconsistent = false;
            for (std::size_t j = 0; j < idx.size() && !inconsistent; ++j)
                if (idx.vectors[j][0] <= idx.vectors[i][0] &&
                    idx.vectors[j][1] <= idx.vectors[i][1] &&
                    ineq_cmp_sorted(m, idx.vectors[i], idx.vectors[j]) < 0)
                    inconsistent = true;
            if (!inconsistent) ++violations;
        }
    }
    return violations;
}

const std::vector<Measure> kAll{kAllMeasures.begin(), kAllMeasures.end()};

} // namespace

TEST_CASE("tsp-optimality flag compares against cached optima") {
    Instance inst = generate_family(3, 0, 6, 2, 1);
    SubsetCache cache = SubsetCache::build(inst, TourMode::Conventional);
    auto parts = enumerate_partitions(inst);
    REQUIRE(!parts.empty());
    const auto& blocks = parts.front();
    Solution s;
    s.blocks = blocks;
    for (SubsetKey b : blocks) s.lengths.push_back(cache.tsp_optimal(b));
    CHECK(flag_tsp_optimal(s, cache));
    // pick a block with a strictly longer alternative length
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& lens = cache.at(blocks[b]).all_lengths;
        if (lens.size() > 1) {
            Solution worse = s;
            worse.lengths[b] = lens.back();
            CHECK_FALSE(flag_tsp_optimal(worse, cache));
            break;
        }
    }
}

TEST_CASE("inconsistency on the documented pair of workload vectors") {
    SolutionSpaceIndex idx = make_index({{6, 5}, {5, 2}});
    CHECK(flag_inconsistent({6, 5}, Measure::Range, idx));   // (5,2) cheaper yet more equal
    CHECK_FALSE(flag_inconsistent({6, 5}, Measure::MinMax, idx));  // 6 > 5: minmax agrees
    CHECK_FALSE(flag_inconsistent({5, 2}, Measure::Range, idx));   // nothing cheaper exists
    CHECK_FALSE(flag_inconsistent({6, 5}, Measure::LexMinMax, idx));
}

TEST_CASE("a lone vector is never inconsistent") {
    SolutionSpaceIndex idx = make_index({{4, 4, 4}});
    for (Measure m : kAll) CHECK_FALSE(flag_inconsistent({4, 4, 4}, m, idx));
}

TEST_CASE("constant-sum detection") {
    CHECK(is_constant_sum(make_index({{3, 2, 1}, {3, 1, 2}, {2, 2, 2}})));
    CHECK_FALSE(is_constant_sum(make_index({{3, 2, 1}, {3, 2, 2}})));
    CHECK_THROWS_AS(is_constant_sum(SolutionSpaceIndex{}), ValidationError);
    // real tour spaces are not constant-sum
    Instance inst = generate_family(5, 0, 6, 2, 0);
    SubsetCache cache = SubsetCache::build(inst, TourMode::TspConstrained);
    CHECK_FALSE(is_constant_sum(build_space_index(inst, cache, TourMode::TspConstrained)));
}

TEST_CASE("streaming inconsistency flags equal the exhaustive scan") {
    for (int seed : {13, 14}) {
        for (TourMode mode : {TourMode::Conventional, TourMode::TspConstrained}) {
            Instance inst = generate_family(seed, 0, 7, 2, 1);
            SubsetCache cache = SubsetCache::build(inst, mode);
            auto res = pareto_enumerate_all(inst, cache, kAll, mode, {}, true);
            SolutionSpaceIndex idx = SolutionSpaceIndex::build(std::move(res.space));
            set_inconsistency_flags(res.fronts, inst, cache, mode);
            for (const auto& [m, front] : res.fronts)
                for (const auto& e : front.entries)
                    CHECK(e.inconsistent == flag_inconsistent(e.solution, idx, m));
            if (mode == TourMode::Conventional) {
                // monotonic fronts stay consistent even when others do not
                for (Measure m : {Measure::MinMax, Measure::LexMinMax})
                    for (const auto& e : res.fronts.at(m).entries) CHECK_FALSE(e.inconsistent);
            }
        }
    }
}

TEST_CASE("agreement matrix basics") {
    auto a = stub_front(Measure::MinMax, {"k1", "k2", "k3"});
    auto b = stub_front(Measure::Range, {"k2", "k3", "k4", "k5"});
    AgreementMatrix mat = agreement_matrix({&a, &b});
    REQUIRE(mat.measures == std::vector<Measure>{Measure::MinMax, Measure::Range});
    CHECK(mat.cells[0][0].jaccard == 1.0);  // diagonal
    CHECK(mat.cells[1][1].jaccard == 1.0);
    CHECK(mat.cells[0][1].intersection == 2);
    CHECK(mat.cells[0][1].union_size == 5);
    CHECK(mat.cells[0][1].share_a == doctest::Approx(2.0 / 3.0));
    CHECK(mat.cells[0][1].share_b == doctest::Approx(0.5));
    CHECK(mat.cells[0][1].jaccard == doctest::Approx(0.4));
    CHECK(mat.cells[1][0].jaccard == mat.cells[0][1].jaccard);  // symmetric
    CHECK(mat.cells[1][0].share_a == mat.cells[0][1].share_b);
    // union of both fronts: k1..k5; k2,k3 in both, the rest unique to one
    CHECK(mat.share_all == doctest::Approx(0.4));
    CHECK(mat.share_unique_one == doctest::Approx(0.6));
    CHECK(mat.share_unique_two == doctest::Approx(0.4));  // with two fronts, "two" = "all"
}

TEST_CASE("agreement corner cases") {
    auto a = stub_front(Measure::MinMax, {"k1", "k2"});
    auto same = stub_front(Measure::Range, {"k1", "k2"});
    AgreementMatrix id = agreement_matrix({&a, &same});
    CHECK(id.cells[0][1].jaccard == 1.0);
    CHECK(id.share_all == 1.0);

    auto disjoint = stub_front(Measure::Range, {"k8", "k9"});
    AgreementMatrix dj = agreement_matrix({&a, &disjoint});
    CHECK(dj.cells[0][1].jaccard == 0.0);
    CHECK(dj.share_all == 0.0);
    CHECK(dj.share_unique_one == 1.0);

    auto other = stub_front(Measure::Range, {"k1"}, 123);  // different instance
    CHECK_THROWS_AS(agreement_matrix({&a, &other}), ValidationError);
}

TEST_CASE("minmax solutions reappear inside the lexicographic front") {
    Instance inst = generate_family(19, 0, 7, 2, 0);
    SubsetCache cache = SubsetCache::build(inst, TourMode::Conventional);
    auto res = pareto_enumerate_all(
        inst, cache, {Measure::MinMax, Measure::LexMinMax}, TourMode::Conventional);
    const ParetoSet& mm = res.fronts.at(Measure::MinMax);
    const ParetoSet& lx = res.fronts.at(Measure::LexMinMax);
    AgreementMatrix mat = agreement_matrix({&mm, &lx});
    CHECK(mat.cells[0][1].share_a == 1.0);  // every minmax solution is in the lex front
}

TEST_CASE("averaged agreement rejects mixed measure lists and averages shares") {
    auto a1 = stub_front(Measure::MinMax, {"x"});
    auto b1 = stub_front(Measure::Range, {"x"});
    auto a2 = stub_front(Measure::MinMax, {"p", "q"});
    auto b2 = stub_front(Measure::Range, {"r", "s"});
    AgreementMatrix m1 = agreement_matrix({&a1, &b1});  // jaccard 1
    AgreementMatrix m2 = agreement_matrix({&a2, &b2});  // jaccard 0
    AgreementMatrix avg = average_agreement({m1, m2});
    CHECK(avg.cells[0][1].jaccard == doctest::Approx(0.5));
    CHECK(avg.share_all == doctest::Approx(0.5));

    AgreementMatrix swapped = agreement_matrix({&b2, &a2});
    CHECK_THROWS_AS(average_agreement({m1, swapped}), ValidationError);
    CHECK_THROWS_AS(average_agreement({}), ValidationError);
}

TEST_CASE("marginal statistics on the published cost step") {
    ParetoSet front;
    front.measure = Measure::Range;
    FrontEntry e1 = make_entry({1, 2, 4, 8, 16}, {97.15, 78.04, 68.96, 53.13, 43.17});
    CHECK_NEAR(e1.solution.cost, 340.45, 1e-9);
    FrontEntry e2 = make_entry({1, 2, 4, 8, 16}, {83.04, 70.11, 68.96, 68.61, 51.11});
    CHECK_NEAR(e2.solution.cost, 341.83, 1e-9);
    e2.solution.sorted_desc.back() = 83.04 - 39.87;  // pin the printed range 39.87
    front.entries = {e1, e2};
    MarginalStats st = marginal_cost_stats(front);
    CHECK(st.imbalance_ratio == doctest::Approx(97.15 / 43.17));
    CHECK(st.step_present);
    CHECK_NEAR(st.step_cost_increase, 0.0041, 0.0001);   // +0.41%
    CHECK_NEAR(st.step_range_reduction, 0.261, 0.001);   // -26.1%
    CHECK(st.share_within_10pct == 1.0);  // both within 10% of the optimum
}

TEST_CASE("marginal statistics without a usable second step") {
    ParetoSet front;
    front.measure = Measure::Range;
    front.entries = {make_entry({1, 2}, {10.0, 8.0})};
    MarginalStats st = marginal_cost_stats(front);
    CHECK_FALSE(st.step_present);
    CHECK(st.imbalance_ratio == doctest::Approx(1.25));
    CHECK(st.share_within_10pct == 1.0);

    // a second entry at identical cost is not a cost step
    FrontEntry twin = make_entry({1, 2}, {9.0, 9.0});
    front.entries.push_back(twin);
    CHECK_FALSE(marginal_cost_stats(front).step_present);

    // non-TSP-optimal or inconsistent entries cannot anchor the step
    FrontEntry later = make_entry({1, 2}, {11.0, 9.0});
    later.tsp_optimal = false;
    front.entries.push_back(later);
    CHECK_FALSE(marginal_cost_stats(front).step_present);
    front.entries.back().tsp_optimal = true;
    CHECK(marginal_cost_stats(front).step_present);
    front.entries.back().inconsistent = true;
    CHECK_FALSE(marginal_cost_stats(front).step_present);

    ParetoSet empty;
    CHECK_THROWS_AS(marginal_cost_stats(empty), ValidationError);
}

TEST_CASE("summaries: ratio of averages vs average of ratios") {
    FrontStats a;
    a.measure = Measure::Range;
    a.cardinality = 5;
    a.tsp_optimal = 2;
    a.consistent = 5;
    std::vector<SummaryRow> rows = summarize({{a}});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].measure == Measure::Range);
    CHECK(rows[0].avg_cardinality == 5.0);
    CHECK(rows[0].tsp_share == doctest::Approx(0.4));
    CHECK(rows[0].consistent_share == doctest::Approx(1.0));
    CHECK_FALSE(rows[0].has_new);

    FrontStats big;
    big.measure = Measure::Range;
    big.cardinality = 10;
    big.tsp_optimal = 1;
    FrontStats small;
    small.measure = Measure::Range;
    small.cardinality = 2;
    small.tsp_optimal = 2;
    rows = summarize({{big}, {small}});
    CHECK(rows[0].instances == 2);
    CHECK(rows[0].tsp_share == doctest::Approx(3.0 / 12.0));       // ratio of averages
    CHECK(rows[0].tsp_share_mean == doctest::Approx(0.55));        // mean of ratios
    CHECK_THROWS_AS(summarize({}), ValidationError);
}

TEST_CASE("summary rows come out in a fixed measure order") {
    FrontStats g;
    g.measure = Measure::Gini;
    FrontStats m;
    m.measure = Measure::MinMax;
    auto rows = summarize({{g, m}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].measure == Measure::MinMax);
    CHECK(rows[1].measure == Measure::Gini);
}

TEST_CASE("front CSV round trip preserves the statistics") {
    Instance inst = generate_family(23, 0, 7, 3, 1);
    SubsetCache cache = SubsetCache::build(inst, TourMode::Conventional);
    auto res = pareto_enumerate_all(inst, cache, kAll, TourMode::Conventional, {}, true);
    set_tsp_flags(res.fronts, cache);
    set_inconsistency_flags(res.fronts, inst, cache, TourMode::Conventional);
    fs::path path = fs::temp_directory_path() / "equityfront_front_roundtrip.csv";
    for (const auto& [m, front] : res.fronts) {
        write_front_csv(path.string(), front, inst.vehicles);
        auto rows = read_front_csv(path.string());
        REQUIRE(rows.size() == front.entries.size());
        FrontStats direct = front_stats(front);
        FrontStats from_csv = front_stats_from_rows(m, rows);
        CHECK(direct.cardinality == from_csv.cardinality);
        CHECK(direct.tsp_optimal == from_csv.tsp_optimal);
        CHECK(direct.consistent == from_csv.consistent);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].nr == int(i) + 1);
            CHECK(rows[i].total_cost == front.entries[i].solution.cost);  // %.17g round trip
            CHECK(rows[i].lengths == front.entries[i].solution.sorted_desc);
            CHECK(rows[i].key == front.entries[i].key);
        }
    }
    fs::remove(path);
}

TEST_CASE("prefix-maximum structure agrees with a direct scan") {
    std::mt19937_64 rng(77);
    auto less = [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
        return a < b;
    };
    const std::size_t N = 300;
    detail::PrefixMax<std::pair<double, double>, decltype(less)> fen(
        N, {-std::numeric_limits<double>::infinity(), 0.0}, less);
    std::vector<std::pair<double, double>> best(
        N, {-std::numeric_limits<double>::infinity(), 0.0});
    for (int step = 0; step < 2000; ++step) {
        std::size_t i = rng() % N;
        std::pair<double, double> v{double(rng() % 1000), double(rng() % 10)};
        fen.update(i, v);
        for (std::size_t k = i; k < N; ++k) best[k] = std::max(best[k], v);
        std::size_t q = rng() % N;
        CHECK(fen.query(q) == best[q]);
    }
}

TEST_CASE("two-vehicle theorem sweep equals the quadratic oracle") {
    for (int seed : {31, 32, 33}) {
        for (TourMode mode : {TourMode::Conventional, TourMode::TspConstrained}) {
            Instance inst = generate_family(seed, 0, 8, 2, seed % 2);
            SubsetCache cache = SubsetCache::build(inst, mode);
            SolutionSpaceIndex idx = build_space_index(inst, cache, mode);
            std::size_t checked = 0;
            std::size_t v = verify_theorem5(idx, kAll, checked);
            CHECK(v == naive_theorem5(idx, kAll));
            CHECK(v == 0);  // the theorem itself
            std::size_t costlier = 0;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (idx.costs[i] > idx.costs.front() + kDedupTol) ++costlier;
            CHECK(checked == costlier);
        }
    }
    CHECK_THROWS_AS(
        ([] {
            std::size_t c = 0;
            verify_theorem5(make_index({{1, 1, 1}}), {Measure::Range}, c);
        }()),
        ValidationError);
}

TEST_CASE("theorem verifier counts injected violations") {
    Instance inst = generate_family(45, 0, 7, 2, 0);
    SubsetCache cache = SubsetCache::build(inst, TourMode::Conventional);
    auto res = pareto_enumerate_all(inst, cache, kAll, TourMode::Conventional, {}, true);
    set_tsp_flags(res.fronts, cache);
    set_inconsistency_flags(res.fronts, inst, cache, TourMode::Conventional);

    {
        TheoremVerifier clean;
        clean.check_fronts(inst.name, res.fronts, TourMode::Conventional);
        SolutionSpaceIndex idx = SolutionSpaceIndex::build(std::move(res.space));
        clean.check_space(inst.name, idx, inst.vehicles, kAll);
        CHECK(clean.report().ok());
        CHECK(clean.report().t1_violations == 0);
        CHECK(clean.report().t5_instances == 1);
        CHECK(clean.report().constant_sum_spaces == 0);
    }
    {
        MeasureFronts broken = res.fronts;
        broken.at(Measure::MinMax).entries.front().tsp_optimal = false;
        broken.at(Measure::LexMinMax).entries.front().inconsistent = true;
        broken.at(Measure::MinMax).entries.front().key = "not-a-real-key";
        TheoremVerifier v;
        v.check_fronts(inst.name, broken, TourMode::Conventional);
        CHECK(v.report().t1_violations == 1);
        CHECK(v.report().t3_violations == 1);
        CHECK(v.report().subset_violations == 1);
        CHECK_FALSE(v.report().ok());
        CHECK(!v.report().violation_notes.empty());
        auto j = theorem_report_to_json(v.report());
        CHECK(j["ok"] == false);
        CHECK(j["theorem1"]["violations"] == 1);
    }
}

TEST_CASE("constrained non-monotonic fronts report inconsistency witnesses") {
    // scan a few instances; at least one inconsistent constrained solution
    // should appear among the non-monotonic measures
    TheoremVerifier v;
    for (int seed : {50, 51, 52, 53}) {
        Instance inst = generate_family(seed, 0, 8, 3, 1);
        SubsetCache cache = SubsetCache::build(inst, TourMode::TspConstrained);
        auto res = pareto_enumerate_all(inst, cache, kAll, TourMode::TspConstrained);
        set_tsp_flags(res.fronts, cache);
        set_inconsistency_flags(res.fronts, inst, cache, TourMode::TspConstrained);
        v.check_fronts(inst.name, res.fronts, TourMode::TspConstrained);
    }
    CHECK(v.report().p3_witnesses > 0);
    CHECK(v.report().ok());  // witnesses are observations, not violations
}
