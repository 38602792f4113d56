// include/dylab/real_eval.hpp - oracle-driven evaluation of real functions.
//
// A spec carries a registered modulus m(k, n) valid on windows [a, a+2^k]
// and a dyadic approximator psi.  evaluate() probes both endpoints at depth
// 2, derives the window exponent k, queries the point oracle once at depth
// m(k, n+1) and finishes inside psi; the precision-gated spec instead runs
// its adaptive machine directly on the oracle (two queries total).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dylab/dyadic.hpp"
#include "dylab/modulus.hpp"
#include "dylab/oracle.hpp"

namespace dylab {

// psi(d, n): |psi(d, n) - f(d)| <= 2^-n on exact dyadic inputs, with digit
// work polynomial in len(d) + n.
using Approximator = std::function<Dyadic(const Dyadic&, std::uint32_t)>;

struct RealFunctionSpec {
    std::string id;
    std::string summary;
    Modulus modulus;    // registered modulus, window [a, a + 2^k]
    bool poly_modulus;  // false flags the spec as outside the poly class
    Approximator psi;
    Dyadic a;           // exact left endpoint of the domain [a, inf)
    bool direct_machine = false;  // evaluate adaptively instead of via psi
};

struct EvalTranscript {
    std::string spec_id;
    std::optional<Dyadic> x;  // exact input when the caller knows it
    std::uint32_t n = 0;
    Dyadic d1;                // depth-2 value of the left endpoint
    Dyadic d2;                // depth-2 probe of x
    std::uint32_t k = 0;      // window exponent derived from the probes
    std::uint64_t alpha = 0;  // depth of the deep query
    Dyadic d;                 // deep probe, clamped into the domain
    Dyadic output;
    std::uint32_t query_depth = 0;
    std::uint64_t oracle_count = 0;
    std::uint64_t digit_ops = 0;

    // spec_id,x_literal,n,k,alpha,query_depth,digit_ops,output_literal
    static std::string csv_header();
    std::string to_csv_row() const;
};

// Least k >= 0 with d2 + 1/4 <= d1 - 1/4 + 2^k.  InconsistentOracles when
// the probes place x strictly below the domain.
std::uint32_t determine_extension(const Dyadic& d1, const Dyadic& d2);

// |output - f(x)| <= 2^-n for the point x behind phi_x.
EvalTranscript evaluate(const RealFunctionSpec& spec, const CauchyOracle& phi_x,
                        std::uint32_t n, std::optional<Dyadic> x_exact = {});

// What evaluate() collapses to on an exact dyadic input.
Dyadic dyadic_restriction(const RealFunctionSpec& spec, const Dyadic& d,
                          std::uint32_t n);

const std::vector<RealFunctionSpec>& bundled_specs();
const RealFunctionSpec* find_spec(std::string_view id);

}  // namespace dylab
