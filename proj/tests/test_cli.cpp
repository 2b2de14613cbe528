#include "jetkernel/cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace jetkernel;
using cli::RunConfig;

namespace {

RunConfig config(std::string sub, std::map<std::string, std::string> params = {}) {
    RunConfig c;
    c.subcommand = std::move(sub);
    c.params = std::move(params);
    return c;
}

struct Proc {
    int code = -1;
    std::string out;
};

Proc run_binary(const std::string& args) {
    const std::string cmd = std::string(JETKERNEL_CLI_PATH) + " " + args + " 2>/dev/null";
    Proc p;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    const int status = pclose(f);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

}  // namespace

TEST(Run, JetCoeffsExample) {
    auto c = config("jet-coeffs", {{"alpha", "1/1"}, {"beta", "2/1"}, {"order", "0"}});
    c.trunc = 3;
    auto r = cli::run(c);
    ASSERT_EQ(r.exit_code, cli::exit_pass);
    const auto& coeffs = r.doc["series"]["coeffs"];
    ASSERT_EQ(coeffs.size(), 4u);
    const char* expect[] = {"1/1", "3/1", "6/1", "10/1"};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(coeffs[k]["m"], k);
        EXPECT_EQ(coeffs[k]["p"], k);
        EXPECT_EQ(coeffs[k]["matrix"][0][0], expect[k]);
    }
    EXPECT_TRUE(r.doc["oracle_match"].get<bool>());
}

TEST(Run, JetCoeffsNormalized) {
    auto c = config("jet-coeffs", {{"alpha", "1/2"}, {"beta", "3/2"}, {"order", "2"}});
    c.normalized = true;
    auto r = cli::run(c);
    ASSERT_EQ(r.exit_code, 0);
    const auto D = Matrix<Rational>::diagonal({1, Rational(3, 2), Rational(15, 2)});  // k! (beta)_k
    EXPECT_EQ(matrix_from_json<Rational>(r.doc["D"]), D);
    EXPECT_EQ(series_from_json<Rational>(r.doc["normalized"]).coeff(0, 0), D);
}

TEST(Run, IdentityCheckExample) {
    auto r = cli::run(config("identity-check", {{"max-ij", "6"}}));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.doc["pass"].get<bool>());
    EXPECT_EQ(r.doc["binomial_checked"], 84);
}

TEST(Run, IrreducibilityExample) {
    auto r = cli::run(config("irreducibility", {{"alpha", "1/1"}, {"beta", "1/1"}, {"order", "1"}}));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["verdict"], "irreducible");
    EXPECT_EQ(r.doc["dimension"], 1);
    auto c = config("irreducibility", {{"alpha", "1/1"}, {"beta", "1/1"}, {"order", "2"}});
    c.mode = Mode::numeric;
    auto n = cli::run(c);
    EXPECT_EQ(n.exit_code, 0);
    EXPECT_EQ(n.doc["arithmetic"], "numeric");
}

TEST(Run, Curvature) {
    auto c = config("curvature", {{"alpha", "1/1"}, {"beta", "1/1"}, {"order", "1"}});
    c.at = {"0.2,0", "0.3,0.2"};
    auto r = cli::run(c);
    ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
    EXPECT_EQ(r.doc["invariants"][1], "5/1");
    ASSERT_EQ(r.doc["samples"].size(), 2u);
    EXPECT_LT(r.doc["samples"][1]["error"].get<double>(), 1e-8);

    c.at = {"0.9,0"};
    EXPECT_EQ(cli::run(c).exit_code, cli::exit_usage);
    c.at = {"abc"};
    EXPECT_EQ(cli::run(c).exit_code, cli::exit_usage);
    c.at = {};
    c.metric = "other";
    EXPECT_EQ(cli::run(c).exit_code, cli::exit_usage);
}

TEST(Run, CocycleCheck) {
    auto c = config("cocycle-check", {{"alpha", "1/1"}, {"beta", "1/1"}, {"order", "2"}, {"samples", "20"}});
    auto r = cli::run(c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["matrix_cocycle_passed"], 20);
    EXPECT_EQ(r.doc["seed"], 1);

    auto frac = config("cocycle-check", {{"alpha", "1/2"}, {"beta", "1/1"}, {"order", "1"}, {"samples", "10"}});
    EXPECT_EQ(cli::run(frac).exit_code, cli::exit_usage);
    frac.mode = Mode::numeric;
    EXPECT_EQ(cli::run(frac).exit_code, 0);
}

TEST(Run, Wilkins) {
    auto c = config("wilkins", {{"alpha", "1/1"}, {"beta", "1/1"}, {"terms", "60"}});
    c.at = {"0.3,0"};
    auto r = cli::run(c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_LT(r.doc["max_error"].get<double>(), 1e-8);
    EXPECT_TRUE(r.doc["q2_diagonal"].get<bool>());

    // too few terms to converge: a check failure, not a usage error
    c.params["terms"] = "3";
    auto bad = cli::run(c);
    EXPECT_EQ(bad.exit_code, cli::exit_check_failed);
    EXPECT_FALSE(bad.doc["counterexample"].get<std::string>().empty());
}

TEST(Run, Tridisc) {
    auto c = config("tridisc", {{"alpha", "1/1"}, {"beta", "9/1"}, {"gamma", "16/1"}});
    auto r = cli::run(c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["g2_exponent"], "28/1");
    EXPECT_TRUE(r.doc["U_exact"].get<bool>());
    EXPECT_EQ(r.doc["projection_ranks"], json::array({2, 1}));
    c.mutate_sum = true;
    auto m = cli::run(c);
    EXPECT_EQ(m.exit_code, cli::exit_check_failed);
    EXPECT_EQ(m.doc["sum_used"], "24/1");
    EXPECT_FALSE(m.doc["counterexample"].get<std::string>().empty());
}

TEST(Run, VerifyAll) {
    auto r = cli::run(config("verify-all"));
    EXPECT_EQ(r.exit_code, 0) << r.diagnostic;
    ASSERT_EQ(r.doc["criteria"].size(), 12u);
    for (const auto& c : r.doc["criteria"]) {
        EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
        EXPECT_FALSE(c.contains("seconds"));
    }
}

TEST(Run, UsageErrors) {
    EXPECT_EQ(cli::run(config("jet-coeffs", {{"beta", "1"}, {"order", "1"}})).exit_code, cli::exit_usage);
    EXPECT_EQ(cli::run(config("jet-coeffs", {{"alpha", "1/0"}, {"beta", "1"}, {"order", "1"}})).exit_code,
              cli::exit_usage);
    EXPECT_EQ(cli::run(config("jet-coeffs", {{"alpha", "-1"}, {"beta", "1"}, {"order", "1"}})).exit_code,
              cli::exit_usage);
    EXPECT_EQ(cli::run(config("jet-coeffs", {{"alpha", "1"}, {"beta", "1"}, {"order", "x"}})).exit_code,
              cli::exit_usage);
    auto big = config("jet-coeffs", {{"alpha", "1"}, {"beta", "1"}, {"order", "1"}});
    big.trunc = 13;
    EXPECT_EQ(cli::run(big).exit_code, cli::exit_usage);
    EXPECT_EQ(cli::run(config("irreducibility", {{"alpha", "1"}, {"beta", "1"}, {"order", "0"}})).exit_code,
              cli::exit_usage);
    EXPECT_EQ(cli::run(config("nonsense")).exit_code, cli::exit_usage);
    auto r = cli::run(config("tridisc", {{"alpha", "1"}, {"beta", "0"}, {"gamma", "1"}}));
    EXPECT_EQ(r.exit_code, cli::exit_usage);
    EXPECT_FALSE(r.diagnostic.empty());
}

TEST(Json, RoundTrip) {
    const auto spec = KernelSpec::bidisc(Rational(3, 2), Rational(1, 2), 2);
    const auto s = jet_kernel_series(spec, 4);
    const auto back = series_from_json<Rational>(json::parse(to_json(s).dump()));
    for (std::size_t m = 0; m <= 4; ++m)
        for (std::size_t p = 0; p <= 4; ++p) EXPECT_EQ(back.coeff(m, p), s.coeff(m, p));

    Matrix<std::complex<double>> z{{{0.1, -0.2}, {1e-17, 3.0}}, {{-0.0, 0.5}, {2.0 / 3.0, 1.0 / 7.0}}};
    EXPECT_EQ(matrix_from_json<std::complex<double>>(json::parse(to_json(z).dump())), z);

    for (const auto& sub : {"jet-coeffs", "tridisc", "wilkins", "curvature"}) {
        auto c = config(sub, {{"alpha", "1/2"}, {"beta", "9/1"}, {"gamma", "16/1"}, {"order", "1"}});
        c.at = {"0.25,0.1"};
        auto r = cli::run(c);
        EXPECT_EQ(json::parse(r.doc.dump()), r.doc) << sub;
        EXPECT_EQ(json::parse(r.doc.dump(2)), r.doc) << sub;
    }
    EXPECT_THROW(matrix_from_json<Rational>(json::parse(R"([["1/2", 3]])")), std::invalid_argument);
    EXPECT_THROW(matrix_from_json<Rational>(json::parse(R"([["1/2"], ["1", "2"]])")), std::invalid_argument);
}

TEST(Json, Deterministic) {
    auto c = config("cocycle-check", {{"alpha", "1/1"}, {"beta", "1/1"}, {"order", "1"}, {"samples", "15"}});
    c.seed = 99;
    EXPECT_EQ(cli::run(c).doc.dump(), cli::run(c).doc.dump());
    EXPECT_EQ(cli::run(config("verify-all")).doc.dump(), cli::run(config("verify-all")).doc.dump());
}

TEST(Binary, ExitCodesAndOutput) {
    auto ok = run_binary("jet-coeffs --alpha 1/1 --beta 2/1 --order 0 --trunc 3");
    EXPECT_EQ(ok.code, 0);
    auto doc = json::parse(ok.out);
    EXPECT_EQ(doc["series"]["coeffs"][3]["matrix"][0][0], "10/1");

    EXPECT_EQ(run_binary("irreducibility --alpha 1/1 --beta 1/1 --order 1").code, 0);
    EXPECT_EQ(run_binary("identity-check --max-ij 6").code, 0);
    EXPECT_EQ(run_binary("tridisc --alpha 1/1 --beta 9/1 --gamma 16/1 --mutate-sum").code, 1);
    EXPECT_EQ(run_binary("jet-coeffs --alpha 1/1 --order 1").code, 2);
    EXPECT_EQ(run_binary("jet-coeffs --alpha 1/1 --beta 1 --order 1 --trunc 40").code, 2);
    EXPECT_EQ(run_binary("").code, 2);
    EXPECT_EQ(run_binary("cocycle-check --alpha 1 --beta 1 --order 1 --mode fuzzy").code, 2);
}

TEST(Binary, QuietOutputAndIndent) {
    EXPECT_EQ(run_binary("identity-check --max-ij 3 --quiet").out, "");
    const auto path = (std::filesystem::temp_directory_path() / "jetkernel_cli_test.json").string();
    auto r = run_binary("identity-check --max-ij 3 --output " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_TRUE(json::parse(ss.str())["pass"].get<bool>());
    std::filesystem::remove(path);
    auto compact = run_binary("identity-check --max-ij 3 --json-indent -1");
    EXPECT_EQ(std::count(compact.out.begin(), compact.out.end(), '\n'), 1);
}

TEST(Binary, ByteIdenticalAcrossRuns) {
    const std::string args = "cocycle-check --alpha 1/2 --beta 3/2 --order 2 --samples 25 --seed 7";
    auto a = run_binary(args), b = run_binary(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\"seed\": 7"), std::string::npos);
    auto v1 = run_binary("verify-all"), v2 = run_binary("verify-all");
    EXPECT_EQ(v1.code, 0);
    EXPECT_EQ(v1.out, v2.out);
}
