#ifndef EQUITYFRONT_INSTANCE_HPP
#define EQUITYFRONT_INSTANCE_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "equityfront/common.hpp"

namespace equityfront {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// A depot, a set of customers, and the fleet parameters (v vehicles of capacity q).
struct Instance {
    std::string name;
    Point depot;
    std::vector<Point> customers;
    int vehicles = 0;
    int capacity = 0;
    std::vector<int> demands;

    int num_customers() const { return static_cast<int>(customers.size()); }

    long long total_demand() const {
        long long s = 0;
        for (int d : demands) s += d;
        return s;
    }

    void validate() const {
        if (vehicles < 2)
            throw ValidationError("vehicles: v must be >= 2, got " + std::to_string(vehicles));
        if (capacity < 1)
            throw ValidationError("capacity: q must be >= 1, got " + std::to_string(capacity));
        if (num_customers() < vehicles)
            throw ValidationError("customers: need at least v=" + std::to_string(vehicles) +
                                  " customers, got " + std::to_string(num_customers()));
        if (demands.size() != customers.size())
            throw ValidationError("demands: size " + std::to_string(demands.size()) +
                                  " does not match customer count " + std::to_string(customers.size()));
        for (int d : demands)
            if (d < 1) throw ValidationError("demands: all demands must be positive");
        if (static_cast<long long>(vehicles) * capacity < total_demand())
            throw ValidationError("capacity: v*q = " +
                                  std::to_string(static_cast<long long>(vehicles) * capacity) +
                                  " cannot cover total demand " + std::to_string(total_demand()));
    }

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Content hash used to key tour caches to the instance they were built from.
inline std::uint64_t instance_hash(const Instance& inst) {
    std::uint64_t h = fnv1a(&inst.depot, sizeof(Point));
    if (!inst.customers.empty())
        h = fnv1a(inst.customers.data(), inst.customers.size() * sizeof(Point), h);
    h = fnv1a(&inst.vehicles, sizeof(int), h);
    h = fnv1a(&inst.capacity, sizeof(int), h);
    if (!inst.demands.empty())
        h = fnv1a(inst.demands.data(), inst.demands.size() * sizeof(int), h);
    return h;
}

// Symmetric Euclidean distances, index 0 = depot, i>=1 = customer i-1.
// Full floating precision, no rounding.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    explicit DistanceMatrix(const Instance& inst) : size_(inst.num_customers() + 1) {
        std::vector<Point> pts;
        pts.reserve(size_);
        pts.push_back(inst.depot);
        pts.insert(pts.end(), inst.customers.begin(), inst.customers.end());
        d_.assign(static_cast<std::size_t>(size_) * size_, 0.0);
        for (int i = 0; i < size_; ++i)
            for (int j = i + 1; j < size_; ++j) {
                double v = euclidean(pts[i], pts[j]);
                d_[static_cast<std::size_t>(i) * size_ + j] = v;
                d_[static_cast<std::size_t>(j) * size_ + i] = v;
            }
    }

    double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * size_ + j]; }
    int size() const { return size_; }

private:
    int size_ = 0;
    std::vector<double> d_;
};

inline DistanceMatrix distance_matrix(const Instance& inst) {
    inst.validate();
    return DistanceMatrix(inst);
}

namespace detail {

// One shared coordinate stream per seed: draw k yields point k.
// Point 0 is the depot of the whole family; customer j (global index
// across blocks) is point 1+j. Keeping the depot at the head of the
// stream makes all blocks of a seed share it.
inline Point stream_point(std::mt19937_64& gen) {
    double x = to_unit_interval(gen()) * 100.0;
    double y = to_unit_interval(gen()) * 100.0;
    return {x, y};
}

} // namespace detail

// Seeded random instance family: uniform points on [0,100]^2, unit demands,
// q = ceil(n/v) + slack. Blocks of the same seed are customer-disjoint.
inline Instance generate_family(std::uint64_t seed, int block, int n, int v, int slack) {
    if (n < 2 || v < 2 || n < v)
        throw ValidationError("generate_family: need n >= v >= 2");
    if (block < 0) throw ValidationError("generate_family: block must be >= 0");
    if (slack != 0 && slack != 1) throw ValidationError("generate_family: slack must be 0 or 1");
    int q = (n + v - 1) / v + slack;
    if (static_cast<long long>(v) * q < n)
        throw ValidationError("generate_family: infeasible parameters, v*q < n");

    std::mt19937_64 gen(seed);
    Instance inst;
    inst.depot = detail::stream_point(gen);
    // skip customer points of earlier blocks
    for (long long k = 0; k < static_cast<long long>(block) * n; ++k)
        detail::stream_point(gen);
    inst.customers.reserve(n);
    for (int i = 0; i < n; ++i)
        inst.customers.push_back(detail::stream_point(gen));
    inst.vehicles = v;
    inst.capacity = q;
    inst.demands.assign(n, 1);

    std::ostringstream name;
    name << "seed" << seed << "_b" << block << "_n" << n << "_v" << v << "_q" << q;
    inst.name = name.str();
    inst.validate();
    return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["name"] = inst.name;
    j["depot"] = {inst.depot.x, inst.depot.y};
    auto customers = nlohmann::json::array();
    for (const auto& c : inst.customers) customers.push_back({c.x, c.y});
    j["customers"] = std::move(customers);
    j["vehicles"] = inst.vehicles;
    j["capacity"] = inst.capacity;
    j["demands"] = inst.demands;
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    for (const char* field : {"format_version", "name", "depot", "customers", "vehicles", "capacity", "demands"})
        if (!j.contains(field))
            throw ParseError(std::string("instance file: missing field \"") + field + "\"");
    if (j.at("format_version").get<int>() != 1)
        throw ParseError("instance file: unsupported format_version " + j.at("format_version").dump());

    Instance inst;
    try {
        inst.name = j.at("name").get<std::string>();
        auto depot = j.at("depot");
        if (!depot.is_array() || depot.size() != 2)
            throw ParseError("instance file: field \"depot\" must be [x,y]");
        inst.depot = {depot[0].get<double>(), depot[1].get<double>()};
        for (const auto& c : j.at("customers")) {
            if (!c.is_array() || c.size() != 2)
                throw ParseError("instance file: field \"customers\" entries must be [x,y]");
            inst.customers.push_back({c[0].get<double>(), c[1].get<double>()});
        }
        inst.vehicles = j.at("vehicles").get<int>();
        inst.capacity = j.at("capacity").get<int>();
        inst.demands = j.at("demands").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
    inst.validate();
    return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        // nlohmann serializes doubles with 17 significant digits (round-trip exact)
        out << instance_to_json(inst).dump(2) << "\n";
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("instance file " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

} // namespace equityfront

#endif
