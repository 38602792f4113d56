#include "doctest.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "dylab/growth.hpp"
#include "dylab/witness.hpp"
#include "helpers.hpp"

using dylab::Dyadic;
using dylab::Growth;
using dylab::GrowthVerdict;
using dylab::ScanRow;
using testutil::dy;

namespace {

std::vector<std::pair<double, double>> series(double (*f)(double), int lo,
                                              int hi) {
    std::vector<std::pair<double, double>> pts;
    for (int x = lo; x <= hi; ++x) pts.push_back({(double)x, f((double)x)});
    return pts;
}

}  // namespace

TEST_CASE("polynomial series classify as polynomial with a sane degree") {
    GrowthVerdict sq =
        dylab::classify_growth(series([](double x) { return x * x; }, 2, 40));
    CHECK(sq.classification == Growth::polynomial);
    CHECK(sq.fitted_degree > 1.8);
    CHECK(sq.fitted_degree < 2.2);
    CHECK(sq.note.find("fits degree") != std::string::npos);

    GrowthVerdict lin =
        dylab::classify_growth(series([](double x) { return 3 * x; }, 2, 40));
    CHECK(lin.classification == Growth::polynomial);
    CHECK(lin.fitted_degree > 0.8);
    CHECK(lin.fitted_degree < 1.2);

    // Degree 8 is steep but still polynomial: no slope jump, ratio not
    // monotone against size^6... it is monotone, so pick degree 5 instead.
    GrowthVerdict d5 = dylab::classify_growth(
        series([](double x) { return std::pow(x, 5.0); }, 2, 40));
    CHECK(d5.classification == Growth::polynomial);
    CHECK(d5.fitted_degree > 4.5);
    CHECK(d5.fitted_degree < 5.5);
}

TEST_CASE("exponential series classify as super-polynomial") {
    GrowthVerdict e =
        dylab::classify_growth(series([](double x) { return std::exp2(x); }, 2, 30));
    CHECK(e.classification == Growth::super_polynomial);
    CHECK(e.slope_second > e.slope_first + 0.5);
    CHECK_FALSE(e.note.empty());

    // Degree 8 growth trips the ratio rule (cost outgrows size^6) even
    // though the log-log slopes agree between halves.
    GrowthVerdict d8 = dylab::classify_growth(
        series([](double x) { return std::pow(x, 8.0); }, 2, 30));
    CHECK(d8.classification == Growth::super_polynomial);
    CHECK(d8.note == "cost outgrows size^6 at every step");
}

TEST_CASE("growth classification edge cases") {
    // Fewer than four points: one shared slope, no jump possible.
    GrowthVerdict tiny = dylab::classify_growth({{2, 4}, {3, 9}, {4, 16}});
    CHECK(tiny.slope_first == tiny.slope_second);
    // Zeros are clamped to 1 before the log.
    GrowthVerdict z =
        dylab::classify_growth({{0, 0}, {2, 4}, {4, 16}, {8, 64}});
    CHECK(z.classification == Growth::polynomial);
    // Determinism.
    auto pts = series([](double x) { return x * x * x; }, 2, 20);
    GrowthVerdict a = dylab::classify_growth(pts);
    GrowthVerdict b = dylab::classify_growth(pts);
    CHECK(a.classification == b.classification);
    CHECK(a.fitted_degree == doctest::Approx(b.fitted_degree));
    CHECK(a.note == b.note);
}

TEST_CASE("measured dyadic runs: exact lengths, symbol-cost floor") {
    const dylab::WitnessInfo* w = dylab::find_witness("sawtooth");
    REQUIRE(w != nullptr);
    Dyadic d = Dyadic(3) + dylab::epsilon(3);
    auto rep = dylab::measure_dyadic(*w, d);
    CHECK(rep.input_len == dylab::len(d));
    CHECK(rep.output_len == dylab::len(dy("1000")));
    CHECK(rep.digit_ops >= rep.output_len / 2);
    CHECK_FALSE(rep.k.has_value());
    CHECK_FALSE(rep.n.has_value());

    // Identical inputs tally identical costs.
    auto rep2 = dylab::measure_dyadic(*w, d);
    CHECK(rep.digit_ops == rep2.digit_ops);
}

TEST_CASE("measured real runs carry the window and accuracy") {
    const dylab::RealFunctionSpec* s = dylab::find_spec("square");
    REQUIRE(s != nullptr);
    auto rep = dylab::measure_real(*s, dy("1.1"), 3);
    REQUIRE(rep.k.has_value());
    REQUIRE(rep.n.has_value());
    CHECK(*rep.k == 1);
    CHECK(*rep.n == 3);
    CHECK(rep.oracle_depth == 6);
    CHECK(rep.oracle_count == 3);
    CHECK(rep.digit_ops >= rep.output_len / 2);
}

TEST_CASE("scan csv: header and row shapes") {
    CHECK(dylab::scan_csv_header() ==
          "target,param_name,param_value,input_len,k,n,output_len,digit_ops,"
          "oracle_depth,oracle_count");
    const dylab::ScanTarget* t = dylab::find_scan_target("sawtooth", "r");
    REQUIRE(t != nullptr);
    ScanRow row = t->run(3);
    std::string csv = dylab::scan_csv_row(row);
    // Dyadic-only runs leave k and n empty.
    CHECK(csv.substr(0, 11) == "sawtooth,r,");
    CHECK(csv.find(",,,") != std::string::npos);

    const dylab::ScanTarget* rt = dylab::find_scan_target("square", "n");
    REQUIRE(rt != nullptr);
    std::string rcsv = dylab::scan_csv_row(rt->run(3));
    CHECK(rcsv.substr(0, 11) == "square,n,3,");
    CHECK(rcsv.find(",,,") == std::string::npos);
}

TEST_CASE("scan target registry lookups") {
    CHECK(dylab::find_scan_target("sawtooth", "r") != nullptr);
    CHECK(dylab::find_scan_target("combined", "r") != nullptr);
    CHECK(dylab::find_scan_target("slow-decay", "i") != nullptr);
    CHECK(dylab::find_scan_target("precision-gated", "j") != nullptr);
    CHECK(dylab::find_scan_target("precision-gated", "n") != nullptr);
    CHECK(dylab::find_scan_target("exp-demo", "x") != nullptr);
    CHECK(dylab::find_scan_target("identity", "n") != nullptr);
    CHECK(dylab::find_scan_target("affine", "n") != nullptr);
    CHECK(dylab::find_scan_target("square", "k") != nullptr);
    CHECK(dylab::find_scan_target("sawtooth-ext", "n") != nullptr);
    CHECK(dylab::find_scan_target("sawtooth-ext", "k") != nullptr);
    CHECK(dylab::find_scan_target("sawtooth", "q") == nullptr);
    CHECK(dylab::find_scan_target("nope", "r") == nullptr);
    for (const auto& t : dylab::scan_targets()) {
        CHECK_FALSE(t.axes.empty());
        CHECK_FALSE(t.summary.empty());
    }
}

TEST_CASE("scan smoke runs: tooth apexes and machine points") {
    const dylab::ScanTarget* saw = dylab::find_scan_target("sawtooth", "r");
    for (std::uint64_t r = 2; r <= 10; ++r) {
        ScanRow row = saw->run(r);
        CHECK(row.param_value == r);
        // Apex value is 2^r: a literal of r+1 symbols.
        CHECK(row.cost.output_len == 2 * (r + 1));
        auto [sz, out] = saw->axes[0].project(row);
        CHECK(sz == 2.0 * std::bit_width(r));
        CHECK(out == (double)row.cost.output_len);
    }

    const dylab::ScanTarget* gate =
        dylab::find_scan_target("precision-gated", "n");
    std::vector<std::pair<double, double>> depth_axis;
    for (std::uint64_t n = 1; n <= 24; n += 2) {
        ScanRow row = gate->run(n);
        CHECK(row.cost.oracle_depth == n + 3);
        depth_axis.push_back(gate->axes[1].project(row));
    }
    GrowthVerdict dv = dylab::classify_growth(depth_axis);
    CHECK(dv.classification == Growth::polynomial);
}
