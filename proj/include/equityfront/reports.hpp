#ifndef EQUITYFRONT_REPORTS_HPP
#define EQUITYFRONT_REPORTS_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "equityfront/analysis.hpp"

namespace equityfront {

// Round-trip-exact double formatting shared by all CSV artifacts.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// All report files are written atomically: temp file then rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

// ------------------------------------------------------------- front CSV

inline std::string measure_value_string(const FrontEntry& e) {
    if (e.point.is_lex) {
        std::string s;
        for (std::size_t i = 0; i < e.point.lex.size(); ++i) {
            if (i) s += '|';
            s += fmt_double(e.point.lex[i]);
        }
        return s;
    }
    return fmt_double(e.point.scalar);
}

inline std::string front_to_csv(const ParetoSet& front, int vehicles) {
    std::ostringstream out;
    out << "nr,total_cost";
    for (int i = 1; i <= vehicles; ++i) out << ",tour_len_" << i;
    out << ",measure_value,tsp_optimal,consistent,solution_key\n";
    int nr = 0;
    for (const auto& e : front.entries) {
        out << ++nr << ',' << fmt_double(e.solution.cost);
        for (double len : e.solution.sorted_desc) out << ',' << fmt_double(len);
        out << ',' << measure_value_string(e) << ',' << (e.tsp_optimal ? 1 : 0) << ','
            << (e.inconsistent ? 0 : 1) << ',' << e.key << '\n';
    }
    return out.str();
}

inline void write_front_csv(const std::string& path, const ParetoSet& front, int vehicles) {
    write_file_atomic(path, front_to_csv(front, vehicles));
}

struct FrontRow {
    int nr = 0;
    double total_cost = 0.0;
    std::vector<double> lengths;  // descending
    std::string measure_value;
    bool tsp_optimal = false;
    bool consistent = true;
    std::string key;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::vector<FrontRow> read_front_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("front csv " + path + ": empty file");
    auto header = split_csv_line(line);
    int vehicles = 0;
    for (const auto& h : header)
        if (h.rfind("tour_len_", 0) == 0) ++vehicles;
    if (vehicles == 0 || header.size() != std::size_t(vehicles) + 6)
        throw ParseError("front csv " + path + ": unexpected header");

    std::vector<FrontRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw ParseError("front csv " + path + ": bad row '" + line + "'");
        FrontRow r;
        std::size_t k = 0;
        r.nr = std::stoi(f[k++]);
        r.total_cost = std::stod(f[k++]);
        for (int i = 0; i < vehicles; ++i) r.lengths.push_back(std::stod(f[k++]));
        r.measure_value = f[k++];
        r.tsp_optimal = f[k++] == "1";
        r.consistent = f[k++] == "1";
        r.key = f[k++];
        rows.push_back(std::move(r));
    }
    return rows;
}

inline FrontStats front_stats_from_rows(Measure m, const std::vector<FrontRow>& rows,
                                        const std::set<std::string>* conventional_keys = nullptr) {
    FrontStats st;
    st.measure = m;
    st.cardinality = rows.size();
    for (const auto& r : rows) {
        if (r.tsp_optimal) ++st.tsp_optimal;
        if (r.consistent) ++st.consistent;
        if (conventional_keys && !conventional_keys->count(r.key)) ++st.fresh;
    }
    st.has_new = conventional_keys != nullptr;
    return st;
}

// ------------------------------------------------------------ summary CSV

inline std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "measure,instances,avg_front_size,avg_tsp_optimal,tsp_share,tsp_share_mean,"
           "avg_consistent,consistent_share,consistent_share_mean,"
           "avg_new,new_share,new_share_mean\n";
    for (const auto& r : rows) {
        out << measure_name(r.measure) << ',' << r.instances << ',' << fmt_double(r.avg_cardinality)
            << ',' << fmt_double(r.avg_tsp_optimal) << ',' << fmt_double(r.tsp_share) << ','
            << fmt_double(r.tsp_share_mean) << ',' << fmt_double(r.avg_consistent) << ','
            << fmt_double(r.consistent_share) << ',' << fmt_double(r.consistent_share_mean) << ',';
        if (r.has_new)
            out << fmt_double(r.avg_new) << ',' << fmt_double(r.new_share) << ','
                << fmt_double(r.new_share_mean);
        else
            out << ",,";
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------- agreement CSV

inline std::string agreement_to_csv(const AgreementMatrix& mat) {
    std::ostringstream out;
    out << "measure_a,measure_b,intersection,union,share_a,share_b,jaccard\n";
    for (std::size_t i = 0; i < mat.measures.size(); ++i)
        for (std::size_t j = 0; j < mat.measures.size(); ++j) {
            const auto& c = mat.cells[i][j];
            out << measure_name(mat.measures[i]) << ',' << measure_name(mat.measures[j]) << ','
                << c.intersection << ',' << c.union_size << ',' << fmt_double(c.share_a) << ','
                << fmt_double(c.share_b) << ',' << fmt_double(c.jaccard) << '\n';
        }
    out << "__global__,found_by_all,,,,," << fmt_double(mat.share_all) << '\n';
    out << "__global__,unique_to_one,,,,," << fmt_double(mat.share_unique_one) << '\n';
    out << "__global__,unique_to_two,,,,," << fmt_double(mat.share_unique_two) << '\n';
    return out.str();
}

// --------------------------------------------------------- theorem JSON

inline nlohmann::json theorem_report_to_json(const TheoremReport& rep) {
    nlohmann::json j;
    j["theorem1"] = {{"solutions", rep.t1_solutions}, {"violations", rep.t1_violations}};
    j["theorem3"] = {{"solutions", rep.t3_solutions}, {"violations", rep.t3_violations}};
    j["theorem5"] = {{"instances", rep.t5_instances},
                     {"solutions", rep.t5_solutions},
                     {"violations", rep.t5_violations}};
    j["minmax_subset_of_lex"] = {{"fronts", rep.subset_fronts},
                                 {"violations", rep.subset_violations}};
    j["constant_sum"] = {{"spaces_probed", rep.spaces_probed},
                         {"constant_sum_spaces", rep.constant_sum_spaces}};
    j["inconsistent_constrained_witnesses"] = rep.p3_witnesses;
    j["violation_notes"] = rep.violation_notes;
    j["witness_notes"] = rep.witness_notes;
    j["ok"] = rep.ok();
    return j;
}

// ------------------------------------------------------ marginal stats JSON

inline nlohmann::json marginal_stats_to_json(const MarginalStats& st) {
    nlohmann::json j;
    j["imbalance_ratio_at_cost_optimum"] = st.imbalance_ratio;
    j["share_within_10pct_of_optimum"] = st.share_within_10pct;
    if (st.step_present) {
        j["step_cost_increase"] = st.step_cost_increase;
        j["step_range_reduction"] = st.step_range_reduction;
    } else {
        j["step_cost_increase"] = nullptr;
        j["step_range_reduction"] = nullptr;
    }
    return j;
}

} // namespace equityfront

#endif
