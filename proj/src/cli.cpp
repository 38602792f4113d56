#include "dylab/cli.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dylab/dyadic.hpp"
#include "dylab/errors.hpp"
#include "dylab/growth.hpp"
#include "dylab/modulus.hpp"
#include "dylab/oracle.hpp"
#include "dylab/real_eval.hpp"
#include "dylab/witness.hpp"

namespace dylab {

namespace {

struct UsageError {
    std::string msg;
};
struct UserError {
    std::string msg;
};

const char* kUsage =
    "usage:\n"
    "  dylab encode <literal>\n"
    "  dylab decode <bits>\n"
    "  dylab eval --witness <id> --at <literal> [--decimal]\n"
    "  dylab eval-real --spec <id> --x <literal> --n <nat>\n"
    "        [--oracle canonical|jitter:<seed>] [--transcript] [--decimal]\n"
    "  dylab modulus-check --witness <id> --k <nat> --n <nat>\n"
    "        [--claim paper|poly:<b>|expk:<c>] [--grid <nat>]\n"
    "  dylab cost-scan --target <id> --param <name>=<lo>..<hi> --csv <path>\n"
    "  dylab list-witnesses\n";

struct FlagSpec {
    const char* name;
    bool takes_value;
};

// Strict flag parser: every argument must be a known --flag, values are
// mandatory where declared, repeats are rejected.
class Flags {
  public:
    Flags(const std::vector<std::string>& args,
          std::initializer_list<FlagSpec> specs) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            const FlagSpec* spec = nullptr;
            for (const FlagSpec& s : specs) {
                if (a == s.name) spec = &s;
            }
            if (spec == nullptr) throw UsageError{"unknown argument '" + a + "'"};
            if (vals_.count(a)) throw UsageError{"repeated flag '" + a + "'"};
            if (spec->takes_value) {
                if (i + 1 >= args.size())
                    throw UsageError{"flag '" + a + "' needs a value"};
                vals_[a] = args[++i];
            } else {
                vals_[a] = "";
            }
        }
    }

    bool has(const std::string& name) const { return vals_.count(name) != 0; }

    const std::string& require(const std::string& name) const {
        auto it = vals_.find(name);
        if (it == vals_.end()) throw UsageError{"missing flag '" + name + "'"};
        return it->second;
    }

    std::optional<std::string> get(const std::string& name) const {
        auto it = vals_.find(name);
        if (it == vals_.end()) return {};
        return it->second;
    }

  private:
    std::map<std::string, std::string> vals_;
};

std::uint64_t parse_nat(std::string_view s, const std::string& what) {
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || s.empty())
        throw UsageError{what + " wants a decimal natural, got '" +
                         std::string(s) + "'"};
    return v;
}

std::uint32_t parse_small_nat(std::string_view s, const std::string& what,
                              std::uint64_t cap) {
    std::uint64_t v = parse_nat(s, what);
    if (v > cap)
        throw UsageError{what + " capped at " + std::to_string(cap)};
    return (std::uint32_t)v;
}

int cmd_encode(const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 1) throw UsageError{"encode wants exactly one literal"};
    out << tau_star_encode(Dyadic::from_string(args[0])) << '\n';
    return 0;
}

int cmd_decode(const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 1) throw UsageError{"decode wants exactly one code"};
    out << tau_star_decode(args[0]).to_string() << '\n';
    return 0;
}

int cmd_eval(const std::vector<std::string>& args, std::ostream& out) {
    Flags f(args, {{"--witness", true}, {"--at", true}, {"--decimal", false}});
    const WitnessInfo* w = find_witness(f.require("--witness"));
    if (w == nullptr)
        throw UserError{"unknown witness '" + f.require("--witness") +
                        "' (see list-witnesses)"};
    Dyadic d = Dyadic::from_string(f.require("--at"));
    Dyadic y = w->eval(d);
    out << y.to_string() << '\n';
    if (f.has("--decimal")) out << to_decimal_string(y) << '\n';
    return 0;
}

CauchyOracle make_oracle(const std::string& desc, const Dyadic& x) {
    if (desc == "canonical") return canonical_oracle(x);
    if (desc.rfind("jitter:", 0) == 0)
        return jittered_oracle(x, parse_nat(desc.substr(7), "--oracle seed"));
    throw UsageError{"--oracle wants canonical or jitter:<seed>"};
}

int cmd_eval_real(const std::vector<std::string>& args, std::ostream& out) {
    Flags f(args, {{"--spec", true},
                   {"--x", true},
                   {"--n", true},
                   {"--oracle", true},
                   {"--transcript", false},
                   {"--decimal", false}});
    const RealFunctionSpec* spec = find_spec(f.require("--spec"));
    if (spec == nullptr)
        throw UserError{"unknown spec '" + f.require("--spec") +
                        "' (see list-witnesses)"};
    Dyadic x = Dyadic::from_string(f.require("--x"));
    std::uint32_t n = parse_small_nat(f.require("--n"), "--n", 1u << 26);
    CauchyOracle phi = make_oracle(f.get("--oracle").value_or("canonical"), x);
    EvalTranscript t = evaluate(*spec, phi, n, x);
    out << t.output.to_string() << '\n';
    if (f.has("--decimal")) out << to_decimal_string(t.output) << '\n';
    if (f.has("--transcript")) {
        out << "# d1=" << t.d1.to_string() << " d2=" << t.d2.to_string()
            << " d=" << t.d.to_string() << '\n';
        out << EvalTranscript::csv_header() << '\n' << t.to_csv_row() << '\n';
    }
    return 0;
}

Modulus claimed_modulus(const WitnessInfo& w, const std::string& claim) {
    if (claim == "paper") {
        if (!w.documented_modulus)
            throw UserError{"witness '" + w.id + "' documents no modulus"};
        return *w.documented_modulus;
    }
    if (claim.rfind("poly:", 0) == 0)
        return Modulus::poly(parse_small_nat(claim.substr(5), "poly degree", 16));
    if (claim.rfind("expk:", 0) == 0)
        return Modulus::affine_exp(parse_nat(claim.substr(5), "expk factor"));
    throw UsageError{"--claim wants paper, poly:<b> or expk:<c>"};
}

int cmd_modulus_check(const std::vector<std::string>& args, std::ostream& out) {
    Flags f(args, {{"--witness", true},
                   {"--k", true},
                   {"--n", true},
                   {"--claim", true},
                   {"--grid", true}});
    const WitnessInfo* w = find_witness(f.require("--witness"));
    if (w == nullptr)
        throw UserError{"unknown witness '" + f.require("--witness") +
                        "' (see list-witnesses)"};
    std::uint32_t k = parse_small_nat(f.require("--k"), "--k", 40);
    std::uint32_t n = parse_small_nat(f.require("--n"), "--n", 1u << 20);
    Modulus m = claimed_modulus(*w, f.get("--claim").value_or("paper"));
    std::optional<std::uint64_t> grid;
    if (auto g = f.get("--grid")) grid = parse_nat(*g, "--grid");
    CheckTarget target{w->eval, w->window};
    // The decay staircase lives on [0, 1) and is checked on the shrunken
    // strip; everything else is checked on the closed window [0, 2^k].
    ModulusReport rep =
        w->id == "slow-decay"
            ? check_modulus_open(target, Dyadic(0), Dyadic(1), m, k, n, grid)
            : check_modulus_bounded(target, Dyadic(0), m, k, n, grid);
    bool refuted = rep.verdict == ModulusVerdict::refuted;
    out << (refuted ? "refuted" : "verified-on-grid") << ": m(" << k << ","
        << n << ") = " << rep.m_value << " [" << m.description()
        << "], pairs = " << rep.pairs_checked
        << (rep.exhaustive ? "" : " (sampled breakpoint window)") << '\n';
    if (refuted) {
        out << "counterexample: x = " << rep.witness->x.to_string()
            << ", y = " << rep.witness->y.to_string()
            << ", gap = " << rep.witness->gap.to_string() << " > "
            << rep.bound.to_string() << '\n';
    }
    out << ModulusReport::csv_header() << '\n' << rep.to_csv_row() << '\n';
    return 0;
}

int cmd_cost_scan(const std::vector<std::string>& args, std::ostream& out) {
    Flags f(args,
            {{"--target", true}, {"--param", true}, {"--csv", true}});
    const std::string& p = f.require("--param");
    auto eq = p.find('=');
    auto dots = p.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw UsageError{"--param wants <name>=<lo>..<hi>"};
    std::string name = p.substr(0, eq);
    std::uint64_t lo = parse_nat(p.substr(eq + 1, dots - eq - 1), "--param lo");
    std::uint64_t hi = parse_nat(p.substr(dots + 2), "--param hi");
    if (lo > hi) throw UsageError{"--param wants lo <= hi"};
    if (hi - lo >= 4096) throw UserError{"scan range capped at 4096 points"};
    const ScanTarget* t = find_scan_target(f.require("--target"), name);
    if (t == nullptr)
        throw UserError{"no scan target '" + f.require("--target") +
                        "' with parameter '" + name +
                        "' (see list-witnesses)"};
    std::ofstream csv(f.require("--csv"));
    if (!csv) throw UserError{"cannot open '" + f.require("--csv") + "'"};
    std::vector<ScanRow> rows;
    csv << scan_csv_header() << '\n';
    for (std::uint64_t v = lo; v <= hi; ++v) {
        rows.push_back(t->run(v));
        csv << scan_csv_row(rows.back()) << '\n';
    }
    out << "wrote " << rows.size() << " rows to " << f.require("--csv")
        << '\n';
    for (const ScanAxis& axis : t->axes) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(rows.size());
        for (const ScanRow& r : rows) pts.push_back(axis.project(r));
        GrowthVerdict v = classify_growth(std::move(pts));
        out << "axis " << axis.name << ": "
            << (v.classification == Growth::super_polynomial
                    ? "super-polynomial"
                    : "polynomial")
            << " (slopes " << std::fixed << std::setprecision(2)
            << v.slope_first << " -> " << v.slope_second << "; " << v.note
            << ")\n";
        out.unsetf(std::ios::fixed);
    }
    return 0;
}

int cmd_list(std::ostream& out) {
    out << "witnesses:\n";
    for (const WitnessInfo& w : witness_registry()) {
        out << "  " << w.id << " - " << w.summary << '\n';
        if (w.documented_modulus) {
            out << "      modulus: " << w.documented_modulus->description()
                << (w.poly_modulus ? " (poly)" : " (non-poly)") << '\n';
        }
    }
    out << "real specs (eval-real):\n";
    for (const RealFunctionSpec& s : bundled_specs()) {
        out << "  " << s.id << " - " << s.summary << '\n';
        out << "      modulus: " << s.modulus.description()
            << (s.poly_modulus ? " (poly)" : " (non-poly)") << '\n';
    }
    out << "scan targets (cost-scan):\n";
    for (const ScanTarget& t : scan_targets()) {
        out << "  " << t.id << " --param " << t.param_name << " - "
            << t.summary << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    try {
        if (args.empty()) {
            err << kUsage;
            return 2;
        }
        std::vector<std::string> rest(args.begin() + 1, args.end());
        const std::string& cmd = args[0];
        if (cmd == "encode") return cmd_encode(rest, out);
        if (cmd == "decode") return cmd_decode(rest, out);
        if (cmd == "eval") return cmd_eval(rest, out);
        if (cmd == "eval-real") return cmd_eval_real(rest, out);
        if (cmd == "modulus-check") return cmd_modulus_check(rest, out);
        if (cmd == "cost-scan") return cmd_cost_scan(rest, out);
        if (cmd == "list-witnesses") {
            if (!rest.empty()) throw UsageError{"list-witnesses takes no flags"};
            return cmd_list(out);
        }
        err << "unknown command '" << cmd << "'\n" << kUsage;
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.msg << '\n';
        return 2;
    } catch (const MalformedLiteral& e) {
        err << "malformed input: " << e.what() << '\n';
        return 2;
    } catch (const NotLowestForm& e) {
        err << "malformed input: " << e.what() << '\n';
        return 2;
    } catch (const UserError& e) {
        err << "error: " << e.msg << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dylab
