#include "dylab/growth.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cmath>
#include <sstream>

#include "dylab/errors.hpp"

namespace dylab {

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

cost::CostReport measure_dyadic(const WitnessInfo& w, const Dyadic& d) {
    cost::CostReport rep;
    rep.input_len = len(d);
    auto t0 = std::chrono::steady_clock::now();
    Dyadic y;
    {
        cost::Scope meter;
        y = w.eval(d);
        rep.digit_ops = meter.digit_ops();
    }
    rep.output_len = len(y);
    rep.digit_ops += rep.output_len / 2;  // one op per emitted symbol
    rep.wall_seconds = elapsed(t0);
    return rep;
}

cost::CostReport measure_real(const RealFunctionSpec& spec, const Dyadic& x,
                              std::uint32_t n, const CauchyOracle* oracle) {
    CauchyOracle local;
    if (oracle == nullptr) {
        local = canonical_oracle(x);
        oracle = &local;
    }
    auto t0 = std::chrono::steady_clock::now();
    EvalTranscript t = evaluate(spec, *oracle, n, x);
    cost::CostReport rep;
    rep.input_len = len(x);
    rep.k = t.k;
    rep.n = n;
    rep.output_len = len(t.output);
    rep.digit_ops = t.digit_ops;  // already includes output symbols
    rep.oracle_depth = t.query_depth;
    rep.oracle_count = t.oracle_count;
    rep.wall_seconds = elapsed(t0);
    return rep;
}

std::string scan_csv_header() {
    return "target,param_name,param_value,input_len,k,n,output_len,digit_ops,"
           "oracle_depth,oracle_count";
}

std::string scan_csv_row(const ScanRow& r) {
    std::ostringstream os;
    os << r.target << ',' << r.param_name << ',' << r.param_value << ','
       << r.cost.input_len << ',';
    if (r.cost.k) os << *r.cost.k;
    os << ',';
    if (r.cost.n) os << *r.cost.n;
    os << ',' << r.cost.output_len << ',' << r.cost.digit_ops << ','
       << r.cost.oracle_depth << ',' << r.cost.oracle_count;
    return os.str();
}

namespace {

double ls_slope(const std::vector<std::pair<double, double>>& pts,
                std::size_t b, std::size_t e) {
    if (e - b < 2) return 0.0;
    double mx = 0, my = 0;
    for (std::size_t i = b; i < e; ++i) {
        mx += std::log(pts[i].first);
        my += std::log(pts[i].second);
    }
    double cnt = (double)(e - b);
    mx /= cnt;
    my /= cnt;
    double num = 0, den = 0;
    for (std::size_t i = b; i < e; ++i) {
        double dx = std::log(pts[i].first) - mx;
        num += dx * (std::log(pts[i].second) - my);
        den += dx * dx;
    }
    if (den < 1e-12) return 0.0;
    return num / den;
}

}  // namespace

GrowthVerdict classify_growth(std::vector<std::pair<double, double>> pts) {
    for (auto& p : pts) {
        p.first = std::max(p.first, 1.0);
        p.second = std::max(p.second, 1.0);
    }
    std::sort(pts.begin(), pts.end());
    GrowthVerdict v;
    std::size_t n = pts.size();
    if (n >= 4) {
        std::size_t half = n / 2;
        v.slope_first = ls_slope(pts, 0, half);
        v.slope_second = ls_slope(pts, half, n);
    } else {
        v.slope_first = v.slope_second = ls_slope(pts, 0, n);
    }
    v.fitted_degree = v.slope_second;
    bool ratio_up = n >= 2;
    for (std::size_t i = 0; i + 1 < n && ratio_up; ++i) {
        double r0 = std::log(pts[i].second) - 6.0 * std::log(pts[i].first);
        double r1 =
            std::log(pts[i + 1].second) - 6.0 * std::log(pts[i + 1].first);
        if (!(r1 > r0)) ratio_up = false;
    }
    bool jump = v.slope_second - v.slope_first > 0.5;
    if (jump || ratio_up) {
        v.classification = Growth::super_polynomial;
        v.note = jump ? "log-log slope keeps climbing between halves"
                      : "cost outgrows size^6 at every step";
    } else {
        std::ostringstream os;
        os << "fits degree ~" << v.fitted_degree << " over the top half";
        v.classification = Growth::polynomial;
        v.note = os.str();
    }
    return v;
}

namespace {

ScanRow witness_row(const char* wid, const char* pname, std::uint64_t val,
                    const Dyadic& d) {
    const WitnessInfo* w = find_witness(wid);
    assert(w != nullptr);
    return {wid, pname, val, measure_dyadic(*w, d)};
}

ScanRow real_row(const char* sid, const char* pname, std::uint64_t val,
                 const Dyadic& x, std::uint32_t n) {
    const RealFunctionSpec* s = find_spec(sid);
    assert(s != nullptr);
    return {sid, pname, val, measure_real(*s, x, n)};
}

std::pair<double, double> vs_input(const ScanRow& r) {
    return {(double)r.cost.input_len, (double)r.cost.digit_ops};
}

std::pair<double, double> out_vs_intlen(const ScanRow& r) {
    double sz = 2.0 * std::max<std::uint64_t>(1, std::bit_width(r.param_value));
    return {sz, (double)r.cost.output_len};
}

double kn_size(const ScanRow& r) {
    return (double)(r.cost.k.value_or(0) + r.cost.n.value_or(0));
}

std::pair<double, double> ops_vs_kn(const ScanRow& r) {
    return {kn_size(r), (double)r.cost.digit_ops};
}

std::pair<double, double> depth_vs_kn(const ScanRow& r) {
    return {kn_size(r), (double)r.cost.oracle_depth};
}

}  // namespace

const std::vector<ScanTarget>& scan_targets() {
    static const std::vector<ScanTarget> ts = [] {
        std::vector<ScanTarget> v;
        v.push_back(
            {"sawtooth", "r",
             "tooth apex at r + epsilon(r): the value 2^r makes the output "
             "length explode against the block index length",
             [](std::uint64_t r) {
                 return witness_row("sawtooth", "r", r,
                                    Dyadic((std::int64_t)r) + epsilon(r));
             },
             {{"output_len vs len(floor(d))", out_vs_intlen},
              {"digit_ops vs len(d)", vs_input}}});
        v.push_back(
            {"combined", "r",
             "same apex points through the combined witness",
             [](std::uint64_t r) {
                 return witness_row("combined", "r", r,
                                    Dyadic((std::int64_t)r) + epsilon(r));
             },
             {{"output_len vs len(floor(d))", out_vs_intlen},
              {"digit_ops vs len(d)", vs_input}}});
        v.push_back(
            {"slow-decay", "i",
             "staircase points 1 - 2^-i: long inputs, cheap answers",
             [](std::uint64_t i) {
                 Dyadic d = Dyadic(1) - Dyadic::power_of_two(-(std::int64_t)i);
                 return witness_row("slow-decay", "i", i, d);
             },
             {{"digit_ops vs len(d)", vs_input}}});
        v.push_back(
            {"precision-gated", "j",
             "peak points j + 1/2: the peak value carries 2^bitlen(j) "
             "fractional bits",
             [](std::uint64_t j) {
                 Dyadic d =
                     Dyadic((std::int64_t)j) + Dyadic::power_of_two(-1);
                 return witness_row("precision-gated", "j", j, d);
             },
             {{"output_len vs len(floor(d))", out_vs_intlen},
              {"digit_ops vs len(d)", vs_input}}});
        v.push_back(
            {"exp-demo", "x",
             "exp at integer x: output has ~1.44 x bits, produced in time "
             "polynomial in that output length",
             [](std::uint64_t x) {
                 return witness_row("exp-demo", "x", x, Dyadic((std::int64_t)x));
             },
             {{"output_len vs len(x)", out_vs_intlen},
              {"digit_ops vs output_len",
               [](const ScanRow& r) {
                   return std::pair<double, double>(
                       (double)r.cost.output_len, (double)r.cost.digit_ops);
               }}}});
        v.push_back({"identity", "n",
                     "identity spec at x = 10.1 across accuracies",
                     [](std::uint64_t n) {
                         return real_row("identity", "n", n,
                                         Dyadic::from_string("10.1"),
                                         (std::uint32_t)n);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn}}});
        v.push_back({"affine", "n",
                     "affine spec at x = 10.1 across accuracies",
                     [](std::uint64_t n) {
                         return real_row("affine", "n", n,
                                         Dyadic::from_string("10.1"),
                                         (std::uint32_t)n);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn}}});
        v.push_back({"square", "n",
                     "square spec at x = 1.1 across accuracies",
                     [](std::uint64_t n) {
                         return real_row("square", "n", n,
                                         Dyadic::from_string("1.1"),
                                         (std::uint32_t)n);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn}}});
        v.push_back({"square", "k",
                     "square spec at x = 2^k - 1/2, fixed n = 16",
                     [](std::uint64_t k) {
                         if (k > 40) {
                             throw ResourceLimit("window exponent beyond cap");
                         }
                         Dyadic x = Dyadic::power_of_two((std::int64_t)k) -
                                    Dyadic::power_of_two(-1);
                         return real_row("square", "k", k, x, 16);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn}}});
        v.push_back({"precision-gated", "n",
                     "adaptive machine at x = 10000.1 across accuracies",
                     [](std::uint64_t n) {
                         return real_row("precision-gated", "n", n,
                                         Dyadic::from_string("10000.1"),
                                         (std::uint32_t)n);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn},
                      {"oracle_depth vs k+n", depth_vs_kn}}});
        v.push_back({"sawtooth-ext", "n",
                     "tooth spec at x = 10.1 across accuracies",
                     [](std::uint64_t n) {
                         return real_row("sawtooth-ext", "n", n,
                                         Dyadic::from_string("10.1"),
                                         (std::uint32_t)n);
                     },
                     {{"digit_ops vs k+n", ops_vs_kn}}});
        v.push_back(
            {"sawtooth-ext", "k",
             "tooth spec at x = 2^k - 1/2, fixed n = 4: the registered "
             "modulus forces oracle depth 3*2^k + 5",
             [](std::uint64_t k) {
                 if (k > 16) {
                     throw ResourceLimit("window exponent beyond cap");
                 }
                 Dyadic x = Dyadic::power_of_two((std::int64_t)k) -
                            Dyadic::power_of_two(-1);
                 return real_row("sawtooth-ext", "k", k, x, 4);
             },
             {{"oracle_depth vs k+n", depth_vs_kn},
              {"digit_ops vs k+n", ops_vs_kn}}});
        return v;
    }();
    return ts;
}

const ScanTarget* find_scan_target(std::string_view id,
                                   std::string_view param) {
    for (const ScanTarget& t : scan_targets()) {
        if (t.id == id && t.param_name == param) return &t;
    }
    return nullptr;
}

}  // namespace dylab
