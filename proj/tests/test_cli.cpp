#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dylab/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dylab::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("encode and decode round the canonical literals") {
    CliResult r = run({"encode", "1.1"});
    CHECK(r.code == 0);
    CHECK(r.out == "111011\n");
    CHECK(r.err.empty());

    CliResult d = run({"decode", "111011"});
    CHECK(d.code == 0);
    CHECK(d.out == "1.1\n");

    CliResult neg = run({"encode", "-0.101"});
    CHECK(neg.code == 0);
    CHECK(neg.out == "010010110011\n");
    CHECK(run({"decode", "010010110011"}).out == "-0.101\n");
}

TEST_CASE("bad literals and codes exit 2 with a malformed-input message") {
    for (const char* lit : {"2", "01", "1.", "-0", "0.10", ""}) {
        CliResult r = run({"encode", lit});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(contains(r.err, "malformed input:"));
    }
    CliResult d = run({"decode", "111"});
    CHECK(d.code == 2);
    CHECK(contains(d.err, "malformed input:"));
    CliResult extra = run({"encode", "1", "1"});
    CHECK(extra.code == 2);
    CHECK(contains(extra.err, "usage error:"));
}

TEST_CASE("eval prints the exact witness value") {
    CliResult r = run({"eval", "--witness", "sawtooth", "--at", "11.010101"});
    CHECK(r.code == 0);
    CHECK(r.out == "1000\n");

    CliResult dec = run({"eval", "--witness", "precision-gated", "--at",
                         "10.1", "--decimal"});
    CHECK(dec.code == 0);
    CHECK(dec.out == "0.1001\n= 0.5625\n");

    CliResult unknown = run({"eval", "--witness", "nope", "--at", "1"});
    CHECK(unknown.code == 1);
    CHECK(contains(unknown.err, "unknown witness 'nope'"));
    CHECK(contains(unknown.err, "list-witnesses"));

    CliResult dom = run({"eval", "--witness", "sawtooth", "--at", "-1"});
    CHECK(dom.code == 1);
    CHECK(contains(dom.err, "error:"));
}

TEST_CASE("eval-real answers and the optional transcript") {
    CliResult r = run(
        {"eval-real", "--spec", "precision-gated", "--x", "10.1", "--n", "20"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.1001\n");

    CliResult dec = run({"eval-real", "--spec", "precision-gated", "--x",
                         "10.1", "--n", "20", "--decimal"});
    CHECK(dec.code == 0);
    CHECK(dec.out == "0.1001\n= 0.5625\n");

    CliResult tr = run({"eval-real", "--spec", "precision-gated", "--x", "10.1",
                        "--n", "20", "--transcript"});
    CHECK(tr.code == 0);
    CHECK(contains(tr.out, "# d1=0 d2=10.1 d=10.1\n"));
    CHECK(contains(tr.out,
                   "spec_id,x_literal,n,k,alpha,query_depth,digit_ops,"
                   "output_literal\n"));
    CHECK(contains(tr.out, "precision-gated,10.1,20,2,23,23,"));

    CliResult jit = run({"eval-real", "--spec", "identity", "--x", "101.011",
                         "--n", "4", "--oracle", "jitter:7"});
    CHECK(jit.code == 0);
    CHECK(!jit.out.empty());

    CliResult badoracle = run({"eval-real", "--spec", "identity", "--x", "1",
                               "--n", "4", "--oracle", "random"});
    CHECK(badoracle.code == 2);
    CHECK(contains(badoracle.err, "canonical or jitter:<seed>"));

    CliResult unknown =
        run({"eval-real", "--spec", "nope", "--x", "1", "--n", "4"});
    CHECK(unknown.code == 1);

    CliResult toodeep = run({"eval-real", "--spec", "identity", "--x", "1",
                             "--n", "67108865"});
    CHECK(toodeep.code == 2);
    CHECK(contains(toodeep.err, "capped"));

    CliResult limit = run({"eval-real", "--spec", "sawtooth-ext", "--x",
                           "10000000000000000000000000", "--n", "4"});
    CHECK(limit.code == 1);
    CHECK(contains(limit.err, "error:"));
}

TEST_CASE("modulus-check: verified verdict, refuted verdict, both exit 0") {
    CliResult ok =
        run({"modulus-check", "--witness", "sawtooth", "--k", "2", "--n", "3"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out,
                   "verified-on-grid: m(2,3) = 15 [3*2^k + n], pairs = "));
    CHECK(contains(ok.out, "verdict,k,n,m,witness_x,witness_y,gap,bound\n"));
    CHECK(contains(ok.out, "verified_on_grid,2,3,15,,,,0.001\n"));
    CHECK(!contains(ok.out, "counterexample"));

    CliResult bad = run({"modulus-check", "--witness", "sawtooth", "--k", "2",
                         "--n", "2", "--claim", "poly:1"});
    CHECK(bad.code == 0);
    CHECK(contains(bad.out, "refuted: m(2,2) = 4 [(k+n)^1], pairs = "));
    CHECK(contains(bad.out, "counterexample: x = "));
    CHECK(contains(bad.out, ", gap = "));
    CHECK(contains(bad.out, "refuted,2,2,4,"));

    CliResult grid = run({"modulus-check", "--witness", "sawtooth", "--k", "1",
                          "--n", "2", "--grid", "8"});
    CHECK(grid.code == 0);

    CliResult decay = run({"modulus-check", "--witness", "slow-decay", "--k",
                           "4", "--n", "1"});
    CHECK(decay.code == 0);
    CHECK(contains(decay.out, "verified-on-grid: m(4,1) = 16 [2^(2^(n+1))],"));

    CliResult combined = run(
        {"modulus-check", "--witness", "combined", "--k", "1", "--n", "2"});
    CHECK(combined.code == 0);
    CHECK(contains(combined.out, "(sampled breakpoint window)"));
}

TEST_CASE("modulus-check error paths") {
    CliResult nomod =
        run({"modulus-check", "--witness", "exp-demo", "--k", "1", "--n", "1"});
    CHECK(nomod.code == 1);
    CHECK(contains(nomod.err, "documents no modulus"));

    CliResult empty = run({"modulus-check", "--witness", "slow-decay", "--k",
                           "0", "--n", "1"});
    CHECK(empty.code == 1);
    CHECK(contains(empty.err, "error:"));

    CliResult bigk = run(
        {"modulus-check", "--witness", "sawtooth", "--k", "41", "--n", "1"});
    CHECK(bigk.code == 2);
    CHECK(contains(bigk.err, "capped at 40"));

    CliResult badclaim = run({"modulus-check", "--witness", "sawtooth", "--k",
                              "1", "--n", "1", "--claim", "magic"});
    CHECK(badclaim.code == 2);
}

TEST_CASE("cost-scan writes the csv and prints axis verdicts") {
    const char* path = "cli_scan_tmp.csv";
    CliResult r = run({"cost-scan", "--target", "square", "--param", "n=1..16",
                       "--csv", path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "wrote 16 rows to cli_scan_tmp.csv"));
    CHECK(contains(r.out, "axis digit_ops vs k+n: polynomial"));

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "target,param_name,param_value,input_len,k,n,output_len,digit_ops,"
          "oracle_depth,oracle_count");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 16);
    in.close();
    std::remove(path);

    CliResult sup = run({"cost-scan", "--target", "sawtooth-ext", "--param",
                         "k=1..12", "--csv", path});
    CHECK(sup.code == 0);
    CHECK(contains(sup.out, "axis oracle_depth vs k+n: super-polynomial"));
    std::remove(path);
}

TEST_CASE("cost-scan argument errors") {
    CHECK(run({"cost-scan", "--target", "square", "--param", "n=5..2", "--csv",
               "x.csv"})
              .code == 2);
    CHECK(run({"cost-scan", "--target", "square", "--param", "n:1..4", "--csv",
               "x.csv"})
              .code == 2);
    CliResult big = run({"cost-scan", "--target", "square", "--param",
                         "n=0..9999", "--csv", "x.csv"});
    CHECK(big.code == 1);
    CHECK(contains(big.err, "capped at 4096"));
    CliResult missing = run({"cost-scan", "--target", "square", "--param",
                             "q=1..4", "--csv", "x.csv"});
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "no scan target"));
}

TEST_CASE("list-witnesses names everything the other commands accept") {
    CliResult r = run({"list-witnesses"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "witnesses:\n"));
    CHECK(contains(r.out, "real specs (eval-real):\n"));
    CHECK(contains(r.out, "scan targets (cost-scan):\n"));
    for (const char* id : {"sawtooth", "slow-decay", "precision-gated",
                           "combined", "exp-demo", "identity", "affine",
                           "square", "sawtooth-ext"}) {
        CHECK(contains(r.out, std::string("  ") + id + " "));
    }
    CHECK(contains(r.out, "modulus: 3*2^k + n (non-poly)"));
    CHECK(contains(r.out, "modulus: n + 2 (poly)"));
    CHECK(run({"list-witnesses", "--verbose"}).code == 2);
}

TEST_CASE("top-level dispatch and usage") {
    CliResult none = run({});
    CHECK(none.code == 2);
    CHECK(contains(none.err, "usage:"));

    CliResult unk = run({"frobnicate"});
    CHECK(unk.code == 2);
    CHECK(contains(unk.err, "unknown command 'frobnicate'"));

    CliResult badflag = run({"eval", "--witness", "sawtooth", "--att", "1"});
    CHECK(badflag.code == 2);
    CHECK(contains(badflag.err, "unknown argument '--att'"));

    CliResult repeated =
        run({"eval", "--witness", "sawtooth", "--witness", "sawtooth", "--at", "1"});
    CHECK(repeated.code == 2);
    CHECK(contains(repeated.err, "repeated flag"));

    CliResult missing = run({"eval", "--witness", "sawtooth"});
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "missing flag '--at'"));

    CliResult dangling = run({"eval", "--witness"});
    CHECK(dangling.code == 2);
    CHECK(contains(dangling.err, "needs a value"));
}
