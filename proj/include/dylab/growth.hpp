// include/dylab/growth.hpp - measured cost scans and growth verdicts.
//
// Costs are deterministic digit-op tallies (see cost.hpp), so scans are
// reproducible bit for bit; wall time is carried along but never judged.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dylab/cost.hpp"
#include "dylab/dyadic.hpp"
#include "dylab/oracle.hpp"
#include "dylab/real_eval.hpp"
#include "dylab/witness.hpp"

namespace dylab {

cost::CostReport measure_dyadic(const WitnessInfo& w, const Dyadic& d);

// Default oracle: the canonical one for x.
cost::CostReport measure_real(const RealFunctionSpec& spec, const Dyadic& x,
                              std::uint32_t n,
                              const CauchyOracle* oracle = nullptr);

struct ScanRow {
    std::string target;
    std::string param_name;
    std::uint64_t param_value = 0;
    cost::CostReport cost;
};

// target,param_name,param_value,input_len,k,n,output_len,digit_ops,
// oracle_depth,oracle_count - k and n empty for dyadic-only runs.
std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& row);

enum class Growth { polynomial, super_polynomial };

struct GrowthVerdict {
    Growth classification = Growth::polynomial;
    double slope_first = 0.0;    // log-log least-squares slope, lower half
    double slope_second = 0.0;   // same, upper half
    double fitted_degree = 0.0;  // the upper-half slope
    std::string note;
};

// Points are (size, cost).  Super-polynomial when the upper-half log-log
// slope exceeds the lower-half one by more than 0.5, or when cost/size^6
// strictly increases across every consecutive point.
GrowthVerdict classify_growth(std::vector<std::pair<double, double>> pts);

// Projects measured rows onto one (size, cost) series for classification.
struct ScanAxis {
    std::string name;
    std::function<std::pair<double, double>(const ScanRow&)> project;
};

struct ScanTarget {
    std::string id;
    std::string param_name;
    std::string summary;
    std::function<ScanRow(std::uint64_t)> run;
    std::vector<ScanAxis> axes;
};

const std::vector<ScanTarget>& scan_targets();
const ScanTarget* find_scan_target(std::string_view id, std::string_view param);

}  // namespace dylab
