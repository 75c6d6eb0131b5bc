#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "equityfront/tours.hpp"

using namespace equityfront;
namespace fs = std::filesystem;

namespace {

Instance unit_square_instance() {
    // depot at origin, customers on the corners of the unit square
    Instance inst;
    inst.depot = {0, 0};
    inst.customers = {{0, 1}, {1, 1}, {1, 0}};
    inst.vehicles = 2;
    inst.capacity = 3;
    inst.demands = {1, 1, 1};
    return inst;
}

double brute_force_tsp(SubsetKey subset, const DistanceMatrix& d) {
    std::vector<int> m = subset_members(subset);
    std::sort(m.begin(), m.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        double len = d(0, m.front() + 1);
        for (std::size_t i = 0; i + 1 < m.size(); ++i) len += d(m[i] + 1, m[i + 1] + 1);
        len += d(m.back() + 1, 0);
        best = std::min(best, len);
    } while (std::next_permutation(m.begin(), m.end()));
    return best;
}

} // namespace

TEST_CASE("feasible subset counts for unit demands") {
    {
        Instance inst;
        inst.depot = {0, 0};
        inst.customers = {{1, 0}, {0, 1}, {1, 1}};
        inst.vehicles = 2;
        inst.capacity = 2;
        inst.demands = {1, 1, 1};
        auto subs = feasible_subsets(inst);
        CHECK(subs.size() == 6);  // C(3,1)+C(3,2)
        CHECK(subs == std::vector<SubsetKey>{1, 2, 3, 4, 5, 6});
    }
    {
        Instance inst = generate_family(1, 0, 4, 2, 0);
        inst.capacity = 4;
        auto subs = feasible_subsets(inst);
        CHECK(subs.size() == 15);  // 2^4 - 1
        CHECK(std::is_sorted(subs.begin(), subs.end()));
    }
    {
        Instance inst = generate_family(1, 0, 14, 2, 0);
        REQUIRE(inst.capacity == 7);
        auto subs = feasible_subsets(inst);
        CHECK(subs.size() == 9907);  // sum_{k=1..7} C(14,k)
    }
}

TEST_CASE("tsp length closed forms for singletons and pairs") {
    Instance inst = unit_square_instance();
    DistanceMatrix d(inst);
    for (int c = 0; c < 3; ++c)
        CHECK(tsp_optimal_length(SubsetKey(1) << c, d) ==
              doctest::Approx(2.0 * d(0, c + 1)).epsilon(1e-15));
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            SubsetKey s = (SubsetKey(1) << a) | (SubsetKey(1) << b);
            CHECK(tsp_optimal_length(s, d) ==
                  doctest::Approx(d(0, a + 1) + d(a + 1, b + 1) + d(b + 1, 0)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(tsp_optimal_length(0, d), ValidationError);
}

TEST_CASE("held-karp matches the permutation brute force") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = generate_family(100 + trial, 0, 7, 2, 1);
        DistanceMatrix d(inst);
        SubsetKey full = (SubsetKey(1) << 7) - 1;
        CHECK(tsp_optimal_length(full, d) == doctest::Approx(brute_force_tsp(full, d)).epsilon(1e-9));
        SubsetKey random_sub = SubsetKey(1 + rng() % (full - 1)) & full;
        if (random_sub == 0) random_sub = 1;
        CHECK(tsp_optimal_length(random_sub, d) ==
              doctest::Approx(brute_force_tsp(random_sub, d)).epsilon(1e-9));
    }
}

TEST_CASE("all tour lengths of the square-corner subset") {
    Instance inst = unit_square_instance();
    DistanceMatrix d(inst);
    TourLengthSet t = all_tour_lengths(7, d);
    // 3 visiting orders up to reversal, two of which tie by symmetry
    REQUIRE(t.all_lengths.size() == 2);
    const double r2 = std::sqrt(2.0);
    CHECK(t.all_lengths[0] == doctest::Approx(4.0).epsilon(1e-12));            // go around
    CHECK(t.all_lengths[1] == doctest::Approx(2.0 + 2.0 * r2).epsilon(1e-12)); // cross the diagonal
    CHECK(t.tsp_optimal == t.all_lengths.front());
    CHECK(t.tsp_optimal == doctest::Approx(tsp_optimal_length(7, d)).epsilon(1e-12));
}

TEST_CASE("generic three-customer subsets give three distinct lengths") {
    Instance inst = generate_family(21, 0, 3, 2, 1);
    inst.capacity = 3;
    DistanceMatrix d(inst);
    TourLengthSet t = all_tour_lengths(7, d);
    CHECK(t.all_lengths.size() == 3);
    CHECK(std::is_sorted(t.all_lengths.begin(), t.all_lengths.end()));
    for (std::size_t i = 0; i + 1 < t.all_lengths.size(); ++i)
        CHECK(t.all_lengths[i + 1] - t.all_lengths[i] > kDedupTol);
}

TEST_CASE("singleton length lists") {
    Instance inst = unit_square_instance();
    DistanceMatrix d(inst);
    TourLengthSet t = all_tour_lengths(2, d);
    REQUIRE(t.all_lengths.size() == 1);
    CHECK(t.all_lengths[0] == doctest::Approx(2.0 * d(0, 2)).epsilon(1e-15));
}

TEST_CASE("first length always equals the tsp optimum") {
    Instance inst = generate_family(5, 0, 8, 2, 0);
    DistanceMatrix d(inst);
    for (SubsetKey s : feasible_subsets(inst)) {
        TourLengthSet t = all_tour_lengths(s, d);
        CHECK(t.tsp_optimal == t.all_lengths.front());
        CHECK(t.tsp_optimal == doctest::Approx(tsp_optimal_length(s, d)).epsilon(1e-9));
    }
}

TEST_CASE("oversized subsets raise a size error pointing at the other mode") {
    Instance inst = generate_family(1, 0, 8, 2, 1);
    DistanceMatrix d(inst);
    SubsetKey full = (SubsetKey(1) << 8) - 1;
    CHECK_THROWS_WITH_AS(all_tour_lengths(full, d, 5), doctest::Contains("max_perm_size"),
                         SizeLimitError);
    CHECK_THROWS_WITH_AS(all_tour_lengths(full, d, 5), doctest::Contains("TSP-constrained"),
                         SizeLimitError);
    CHECK_NOTHROW(all_tour_lengths(full, d, 8));
}

TEST_CASE("adding a customer never shortens the optimal tour") {
    std::mt19937_64 rng(23);
    Instance inst = generate_family(9, 0, 10, 2, 1);
    DistanceMatrix d(inst);
    for (int chain = 0; chain < 20; ++chain) {
        std::vector<int> order(10);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        SubsetKey s = 0;
        double prev = 0.0;
        for (int step = 0; step < 6; ++step) {
            s |= SubsetKey(1) << order[step];
            double cur = tsp_optimal_length(s, d);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("subset cache: determinism, round trip, rejection") {
    Instance inst = generate_family(4, 1, 8, 3, 0);
    fs::path path = fs::temp_directory_path() / "equityfront_cache_test.json";

    SubsetCache a = SubsetCache::build(inst, TourMode::Conventional);
    SubsetCache b = SubsetCache::build(inst, TourMode::Conventional);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries()[i].subset == b.entries()[i].subset);
        CHECK(a.entries()[i].all_lengths == b.entries()[i].all_lengths);
    }

    a.save(path.string());
    auto loaded = SubsetCache::load(path.string(), inst, TourMode::Conventional);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(loaded->entries()[i].subset == a.entries()[i].subset);
        CHECK(loaded->entries()[i].tsp_optimal == a.entries()[i].tsp_optimal);
        CHECK(loaded->entries()[i].all_lengths == a.entries()[i].all_lengths);
    }

    // wrong mode or wrong instance -> cache rejected
    CHECK_FALSE(SubsetCache::load(path.string(), inst, TourMode::TspConstrained).has_value());
    Instance other = generate_family(4, 1, 8, 3, 1);
    CHECK_FALSE(SubsetCache::load(path.string(), other, TourMode::Conventional).has_value());
    CHECK_FALSE(SubsetCache::load((path.string() + ".missing"), inst,
                                  TourMode::Conventional).has_value());
    fs::remove(path);
}

TEST_CASE("parallel cache builds match the serial build") {
    Instance inst = generate_family(6, 0, 10, 2, 1);
    SubsetCache serial = SubsetCache::build(inst, TourMode::Conventional, 9, kDedupTol, 1);
    SubsetCache parallel = SubsetCache::build(inst, TourMode::Conventional, 9, kDedupTol, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial.entries()[i].subset == parallel.entries()[i].subset);
        CHECK(serial.entries()[i].all_lengths == parallel.entries()[i].all_lengths);
    }
}

TEST_CASE("tsp-mode cache covers n=14 with 9907 entries") {
    Instance inst = generate_family(1, 0, 14, 2, 0);
    SubsetCache cache = SubsetCache::build(inst, TourMode::TspConstrained, 9, kDedupTol, 4);
    CHECK(cache.size() == 9907);
    CHECK(cache.mode() == TourMode::TspConstrained);
    // spot checks against the DP
    DistanceMatrix d(inst);
    CHECK(cache.tsp_optimal(1) == doctest::Approx(2.0 * d(0, 1)).epsilon(1e-12));
    CHECK(cache.at(3).all_lengths.size() == 1);
    CHECK_THROWS_AS(cache.at((SubsetKey(1) << 14) - 1), ValidationError);  // demand 14 > q
}

TEST_CASE("mode names round-trip") {
    CHECK(mode_name(TourMode::Conventional) == "conventional");
    CHECK(mode_name(TourMode::TspConstrained) == "tsp");
    CHECK(parse_mode("conventional") == TourMode::Conventional);
    CHECK(parse_mode("tsp") == TourMode::TspConstrained);
    CHECK_FALSE(parse_mode("both").has_value());
}
