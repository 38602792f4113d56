#include "dylab/real_eval.hpp"

#include <sstream>

#include "dylab/cost.hpp"
#include "dylab/errors.hpp"
#include "dylab/witness.hpp"

namespace dylab {

std::string EvalTranscript::csv_header() {
    return "spec_id,x_literal,n,k,alpha,query_depth,digit_ops,output_literal";
}

std::string EvalTranscript::to_csv_row() const {
    std::ostringstream os;
    os << spec_id << ',' << (x ? x->to_string() : "") << ',' << n << ',' << k
       << ',' << alpha << ',' << query_depth << ',' << digit_ops << ','
       << output.to_string();
    return os.str();
}

std::uint32_t determine_extension(const Dyadic& d1, const Dyadic& d2) {
    Dyadic quarter = Dyadic::power_of_two(-2);
    Dyadic lhs = d2 + quarter;
    Dyadic rhs = d1 - quarter;
    if (lhs < rhs) {
        throw InconsistentOracles("probes place the point below the domain");
    }
    std::uint32_t k = 0;
    while (lhs > rhs + Dyadic::power_of_two(k)) {
        if (++k > (1u << 20)) throw ResourceLimit("window exponent runaway");
    }
    return k;
}

EvalTranscript evaluate(const RealFunctionSpec& spec, const CauchyOracle& phi_x,
                        std::uint32_t n, std::optional<Dyadic> x_exact) {
    if (!phi_x.valid()) throw Error("point oracle not set");
    EvalTranscript t;
    t.spec_id = spec.id;
    t.x = std::move(x_exact);
    t.n = n;
    cost::Scope meter;
    InstrumentedOracle ox(phi_x);
    if (spec.direct_machine) {
        MachineTrace mt;
        t.output = precision_gated_machine(ox, n, &mt);
        t.d1 = spec.a.round_to_precision(2);
        t.d2 = mt.coarse;
        t.k = mt.k_class;
        t.alpha = (std::uint64_t)n + 3;
        t.d = mt.deep;
        t.oracle_count = ox.count();  // exactly the two probes
    } else {
        // The left endpoint is exact, so its depth-2 value is free.
        t.d1 = spec.a.round_to_precision(2);
        t.d2 = ox.query(2);
        t.k = determine_extension(t.d1, t.d2);
        t.alpha = spec.modulus(t.k, n + 1);
        if (t.alpha > (1ull << 26)) {
            throw ResourceLimit("oracle depth beyond the resource cap");
        }
        t.d = ox.query((std::uint32_t)t.alpha);
        if (t.d < spec.a) t.d = spec.a;  // clamp into the domain
        t.output = spec.psi(t.d, n + 1);
        t.oracle_count = ox.count() + 1;  // count the endpoint probe too
    }
    t.query_depth = std::max(2u, ox.max_depth());
    t.digit_ops = meter.digit_ops() + len(t.output) / 2;
    return t;
}

Dyadic dyadic_restriction(const RealFunctionSpec& spec, const Dyadic& d,
                          std::uint32_t n) {
    if (d < spec.a) throw DomainError("point below the spec's domain");
    if (spec.direct_machine) {
        InstrumentedOracle ox(canonical_oracle(d));
        return precision_gated_machine(ox, n);
    }
    return spec.psi(d, n);
}

const std::vector<RealFunctionSpec>& bundled_specs() {
    static const std::vector<RealFunctionSpec> specs = [] {
        std::vector<RealFunctionSpec> v;
        v.push_back({"identity",
                     "f(x) = x on [0, inf)",
                     Modulus::linear(0),
                     true,
                     [](const Dyadic& d, std::uint32_t n) {
                         return d.round_to_precision(n + 2);
                     },
                     Dyadic(0),
                     false});
        Dyadic c = Dyadic::from_string("10.11");   // 11/4
        Dyadic e0 = Dyadic::from_string("0.101");  // 5/8
        v.push_back({"affine",
                     "f(x) = (11/4) x + 5/8 on [0, inf)",
                     Modulus::linear(2),
                     true,
                     [c, e0](const Dyadic& d, std::uint32_t n) {
                         return (c * d + e0).round_to_precision(n + 2);
                     },
                     Dyadic(0),
                     false});
        v.push_back({"square",
                     "f(x) = x^2 on [0, inf)",
                     Modulus::from_fn(
                         "n + k + 1",
                         [](std::uint32_t k, std::uint32_t n) {
                             return (std::uint64_t)n + k + 1;
                         },
                         true),
                     true,
                     [](const Dyadic& d, std::uint32_t n) {
                         return (d * d).round_to_precision(n + 1);
                     },
                     Dyadic(0),
                     false});
        v.push_back({"precision-gated",
                     "gated peaks, evaluated by the adaptive machine",
                     Modulus::linear(2),
                     true,
                     [](const Dyadic& d, std::uint32_t n) {
                         InstrumentedOracle ox(canonical_oracle(d));
                         return precision_gated_machine(ox, n);
                     },
                     Dyadic(0),
                     true});
        v.push_back({"sawtooth-ext",
                     "tooth witness as a real function; modulus exponential "
                     "in k, so evaluation depth blows up with the window",
                     Modulus::affine_exp(3),
                     false,
                     [](const Dyadic& d, std::uint32_t n) {
                         return sawtooth_eval(d).round_to_precision(n + 2);
                     },
                     Dyadic(0),
                     false});
        return v;
    }();
    return specs;
}

const RealFunctionSpec* find_spec(std::string_view id) {
    for (const RealFunctionSpec& s : bundled_specs()) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

}  // namespace dylab
