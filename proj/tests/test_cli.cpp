#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result
{
    int code = -1;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test
{
  protected:
    static void SetUpTestSuite()
    {
        dir_ = fs::temp_directory_path() / ("pulab_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
        write("cube.json", R"({"family":"cube","dim":3,"L":1})");
        write("eq3.json", R"({"family":"equality_case","dim":3,"L":1,"a":1.5})");
        write("eq5.json", R"({"family":"equality_case","dim":5,"L":1,"a":1.5})");
        write("l1_3.json", R"({"family":"lp_ball","dim":3,"p":1,"r":1})");
        write("l1_5.json", R"({"family":"lp_ball","dim":5,"p":1,"r":1})");
        write("orlicz.json", R"({"family":"orlicz","dim":3,"young":{"kind":"power","p":2}})");
        write("bad_dim.json", R"({"family":"cube","dim":-2,"L":1})");
        write("bad_knot.json",
              R"({"family":"orlicz","dim":3,"young":{"kind":"pwl","knots":[[0,0],[1,2],[2,3]]}})");
        write("tampered.json", R"({"values":[2,4,6,16]})");
        write("not_json.json", "{family: cube");
    }

    static void TearDownTestSuite() { fs::remove_all(dir_); }

    static void write(std::string const& name, std::string const& text)
    {
        std::ofstream(dir_ / name) << text;
    }

    static std::string slurp(fs::path const& p)
    {
        std::ifstream in(p);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    static Result run(std::string const& args)
    {
        auto const err_path = dir_ / "stderr.txt";
        std::string const cmd = "cd '" + dir_.string() + "' && '" + PULAB_CLI_PATH + "' " + args +
                                " 2>'" + err_path.string() + "'";
        Result r;
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) return r;
        char buf[4096];
        std::size_t n = 0;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
        int const status = ::pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err_path);
        return r;
    }

    static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, VolumeExact)
{
    auto const r = run("volume cube.json --method exact");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out).at("value"), 8.0);
    EXPECT_NE(r.err.find("volume"), std::string::npos);
    EXPECT_EQ(json::parse(run("volume eq3.json --method exact").out).at("value"), 12.0);
}

TEST_F(Cli, VolumeUnsupported)
{
    EXPECT_EQ(run("volume orlicz.json --method exact").code, 2);
    EXPECT_EQ(run("volume l1_5.json --method quad").code, 2);
}

TEST_F(Cli, MalformedSpecPointsAtField)
{
    auto const r = run("volume bad_dim.json");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("/dim"), std::string::npos) << r.err;
    auto const k = run("volume bad_knot.json --method quad");
    EXPECT_EQ(k.code, 1);
    EXPECT_NE(k.err.find("/young/knots"), std::string::npos) << k.err;
    EXPECT_EQ(run("volume not_json.json").code, 1);
    EXPECT_EQ(run("volume missing.json").code, 1);
}

TEST_F(Cli, SeedsAreMandatoryForSampling)
{
    auto const r = run("volume cube.json --method mc");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--seed"), std::string::npos);
    EXPECT_EQ(run("sequence orlicz.json --samples 1000").code, 1);
    EXPECT_EQ(run("experiment neg-corr cube.json").code, 1);
}

TEST_F(Cli, VolumeMonteCarloAndQuadrature)
{
    auto const mc = run("volume l1_3.json --method mc --samples 100000 --seed 4");
    ASSERT_EQ(mc.code, 0) << mc.err;
    auto const j = json::parse(mc.out);
    EXPECT_EQ(j.at("method"), "monte_carlo");
    EXPECT_EQ(j.at("seed"), 4);
    EXPECT_NEAR(j.at("value").get<double>(), 4.0 / 3.0, 4.0 * j.at("std_error").get<double>());
    auto const q = json::parse(run("volume orlicz.json --method quad --grid 100").out);
    EXPECT_EQ(q.at("method"), "quadrature");
    auto const cone = run("volume eq3.json --method cone --samples 100000 --seed 2");
    ASSERT_EQ(cone.code, 0) << cone.err;
    auto const c = json::parse(cone.out);
    EXPECT_NEAR(c.at("ordered_cone").at("value").get<double>(), 0.25,
                4.0 * c.at("ordered_cone").at("std_error").get<double>());
}

TEST_F(Cli, SequenceVerdicts)
{
    auto const l1 = run("sequence l1_5.json");
    EXPECT_EQ(l1.code, 0) << l1.err;
    auto const eq = run("sequence eq5.json");
    ASSERT_EQ(eq.code, 0);
    for (auto const& s : json::parse(eq.out).at("report").at("statistics")) {
        if (s.at("label").get<std::string>().rfind("g_", 0) == 0) {
            EXPECT_EQ(s.at("value"), 0.0);
        }
    }
    EXPECT_EQ(run("sequence tampered.json").code, 3);
}

TEST_F(Cli, SequenceReplayOfWrittenReport)
{
    ASSERT_EQ(run("sequence l1_5.json --out seq.json").code, 0);
    auto const doc = json::parse(slurp(dir_ / "seq.json"));
    write("replay.json", doc.at("sequence").dump());
    auto const r = run("sequence replay.json");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out).at("report").at("statistics"), doc.at("report").at("statistics"));
}

TEST_F(Cli, Lemma)
{
    auto const a = run("lemma1 --profile affine --alpha 1 --n 3");
    ASSERT_EQ(a.code, 0);
    auto const stats = json::parse(a.out).at("statistics");
    EXPECT_NEAR(stats[2].at("value").get<double>(), 0.0, 1e-10);
    auto const c = run("lemma1 --profile affine --alpha 0 --n 4");
    ASSERT_EQ(c.code, 0);
    EXPECT_NEAR(json::parse(c.out).at("statistics")[2].at("value").get<double>(), 0.25, 1e-12);
    auto const p = run("lemma1 --profile power --beta 0.5 --n 5");
    ASSERT_EQ(p.code, 0);
    EXPECT_GE(json::parse(p.out).at("statistics")[2].at("value").get<double>(), 0.0);
    EXPECT_EQ(run("lemma1 --profile pwl --knots 0:1,0.5:0.9,1:0.85 --n 3").code, 1);
    EXPECT_EQ(run("lemma1 --profile pwl --knots 0:1,0.5:0.8,1:0 --n 6").code, 0);
    EXPECT_EQ(run("lemma1 --profile cubic --n 3").code, 1);
}

TEST_F(Cli, UnknownExperimentListsNames)
{
    auto const r = run("experiment nope cube.json --seed 1");
    EXPECT_EQ(r.code, 1);
    for (char const* name : {"neg-corr", "taylor", "bn-density", "covariance", "ratio-scan",
                             "slice-profile"}) {
        EXPECT_NE(r.err.find(name), std::string::npos) << name;
    }
}

TEST_F(Cli, Experiments)
{
    EXPECT_EQ(run("experiment neg-corr cube.json --seed 1 --samples 20000 "
                  "--thresholds 0.2,0.5,0.1")
                  .code,
              0);
    EXPECT_EQ(run("experiment taylor l1_3.json --seed 2 --samples 200000 --t 0.02").code, 0);
    int const bn = run("experiment bn-density --n 2 --seed 3 --samples 100000").code;
    EXPECT_TRUE(bn == 0 || bn == 4) << bn;
    EXPECT_EQ(run("experiment covariance cube.json --seed 4 --samples 20000 --block-a 0 "
                  "--block-b 1,2 --f clipped:0.5 --g min")
                  .code,
              0);
    EXPECT_EQ(run("experiment covariance cube.json --seed 4 --block-a 0 --block-b 0").code, 1);
    EXPECT_EQ(run("experiment ratio-scan l1_3.json --n-min 1 --n-max 6").code, 0);
    EXPECT_EQ(run("experiment symmetry eq3.json --seed 5").code, 0);
}

TEST_F(Cli, SliceProfileCsvAndManifest)
{
    write("square.json", R"({"family":"cube","dim":2,"L":1})");
    auto const r = run("experiment slice-profile square.json --seed 6 --samples 5000 "
                       "--grid-points 11 --csv slice.csv --out slice.json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir_ / "slice.csv").substr(0, 11), "grid,value\n");
    EXPECT_TRUE(fs::exists(dir_ / "slice.csv.manifest.json"));
    EXPECT_TRUE(fs::exists(dir_ / "slice.json.manifest.json"));
}

TEST_F(Cli, ManifestHashesSpec)
{
    ASSERT_EQ(run("volume cube.json --method mc --seed 9 --samples 1000 --out v.json").code, 0);
    auto const manifest = json::parse(slurp(dir_ / "v.json.manifest.json"));
    EXPECT_EQ(manifest.at("seeds"), json::array({9}));
    EXPECT_TRUE(manifest.contains("timestamp"));
    EXPECT_TRUE(manifest.contains("version"));
    EXPECT_NE(manifest.at("command").get<std::string>().find("--seed 9"), std::string::npos);
    // Independent digest from coreutils.
    FILE* pipe = ::popen(("sha256sum '" + (dir_ / "cube.json").string() + "'").c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    char buf[65] = {};
    ASSERT_EQ(std::fread(buf, 1, 64, pipe), 64u);
    ::pclose(pipe);
    EXPECT_EQ(manifest.at("spec_sha256"), std::string(buf));
    EXPECT_EQ(slurp(dir_ / "v.json"), run("volume cube.json --method mc --seed 9 --samples 1000").out);
}

TEST_F(Cli, Reproducible)
{
    auto const cmd = "experiment neg-corr l1_3.json --seed 11 --samples 5000 --thresholds 0.3,0.3,0";
    auto const a = run(cmd);
    auto const b = run(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run("experiment neg-corr l1_3.json --seed 12 --samples 5000 "
                         "--thresholds 0.3,0.3,0")
                         .out);
}

TEST_F(Cli, SampleCsv)
{
    auto const r = run("sample l1_3.json --method rejection --count 10 --seed 1");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 9), "x1,x2,x3\n");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
    auto const radial = run("sample --method radial --n 3 --count 5 --seed 1 --out pts.csv");
    ASSERT_EQ(radial.code, 0) << radial.err;
    EXPECT_TRUE(fs::exists(dir_ / "pts.csv.manifest.json"));
    EXPECT_EQ(run("sample l1_3.json --count 10").code, 1);
}
