#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + NNBENCH_BIN + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("nnbench_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    // Small dataset so training stays fast.
    std::string small_data() {
        const auto csv = path("small.csv");
        EXPECT_EQ(run("gen --n 40 --p 6 --informative 3 --seed 3 --out " + csv), 0);
        return csv;
    }

    fs::path dir;
};

bool has_tmp_files(const fs::path& dir) {
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.path().filename().string().find(".tmp") != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_F(Cli, HelpAndVersion) {
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("--version"), 0);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, GenShapeAndDeterminism) {
    ASSERT_EQ(run("gen --seed 1 --out " + path("a.csv")), 0);
    ASSERT_EQ(run("gen --seed 1 --out " + path("b.csv")), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    const auto side = load(path("a.json"));
    EXPECT_EQ(side.at("rows"), 100);
    EXPECT_EQ(side.at("cols"), 234);
    const auto csv = slurp(path("a.csv"));
    const auto header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 234);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
    const auto manifest = load(path("a.manifest.json"));
    EXPECT_EQ(manifest.at("kind"), "run_manifest");
    EXPECT_EQ(manifest.at("command"), "gen");
    EXPECT_EQ(manifest.at("seed"), 1);
    ASSERT_EQ(run("gen --seed 2 --out " + path("c.csv")), 0);
    EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(Cli, GenRejectsBadArguments) {
    EXPECT_EQ(run("gen --p 0 --seed 1 --out " + path("x.csv")), 2);
    EXPECT_EQ(run("gen --out " + path("x.csv")), 2);
    EXPECT_EQ(run("gen --n 10 --p 3 --informative 5 --seed 1 --out " + path("x.csv")), 2);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, TrainWritesTenCellTable) {
    const auto csv = small_data();
    ASSERT_EQ(run("train --data " + csv + " --model qrnn --epochs 50 --hidden 3 --seed 4 --out " + path("q")), 0);
    const auto m = load(path("q/metrics.json"));
    EXPECT_EQ(m.at("kind"), "metrics_report");
    EXPECT_EQ(m.at("table").size(), 10u);
    EXPECT_EQ(m.at("train_rows").get<int>() + m.at("test_rows").get<int>(), 40);
    const auto table = slurp(path("q/metrics.csv"));
    EXPECT_EQ(table.rfind("RMSE-train,RMSE-test,R2-train,R2-test", 0), 0u);
    for (const char* f : {"network.json", "trace.csv", "predictions.csv", "train.manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir / "q" / f)) << f;
    }
    const auto trace = slurp(path("q/trace.csv"));
    EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 51);
    EXPECT_FALSE(has_tmp_files(dir));
}

TEST_F(Cli, ZeroMomentumMatchesPlainDescent) {
    const auto csv = small_data();
    const std::string common = " --epochs 40 --hidden 3 --eta 0.05 --seed 9 --data " + csv;
    ASSERT_EQ(run("train --model gdbpmnn --momentum 0" + common + " --out " + path("m")), 0);
    ASSERT_EQ(run("train --model gdbpnn" + common + " --out " + path("p")), 0);
    EXPECT_EQ(load(path("m/metrics.json")).at("table"), load(path("p/metrics.json")).at("table"));
    EXPECT_EQ(slurp(path("m/predictions.csv")), slurp(path("p/predictions.csv")));
}

TEST_F(Cli, ManifestRecordsDefaults) {
    const auto csv = small_data();
    ASSERT_EQ(run("train --model bpwdnn --epochs 5 --hidden 2 --seed 1 --data " + csv + " --out " + path("w")), 0);
    const auto man = load(path("w/train.manifest.json"));
    EXPECT_EQ(man.at("resolved").at("model_spec").at("config").at("lambda"), 1e-4);
    EXPECT_EQ(man.at("inputs").size(), 1u);
    EXPECT_EQ(man.at("inputs")[0].at("sha256").get<std::string>().size(), 64u);
}

TEST_F(Cli, InapplicableHyperparameterIsUsageError) {
    const auto csv = small_data();
    EXPECT_EQ(run("train --model qrnn --momentum 0.5 --seed 1 --data " + csv + " --out " + path("x")), 2);
    EXPECT_EQ(run("train --model gdbpnn --theta 0.5 --seed 1 --data " + csv + " --out " + path("x")), 2);
    EXPECT_EQ(run("train --model nope --seed 1 --data " + csv + " --out " + path("x")), 2);
    EXPECT_FALSE(fs::exists(path("x/metrics.json")));
}

TEST_F(Cli, DivergenceExitCode) {
    const auto csv = small_data();
    EXPECT_EQ(run("train --model gdbpnn --eta 1e12 --epochs 20 --seed 1 --data " + csv + " --out " + path("d")), 4);
}

TEST_F(Cli, MissingFilesAreDataErrors) {
    EXPECT_EQ(run("compare --result " + path("nope.json") + " --out " + path("c")), 3);
    EXPECT_EQ(run("report --result " + path("nope.json") + " --out " + path("r")), 3);
    std::ofstream(path("bad.csv")) << "a,b\n1,zz\n";
    EXPECT_EQ(run("train --model gdbpnn --target b --seed 1 --data " + path("bad.csv") + " --out " + path("t")), 3);
}

TEST_F(Cli, BenchmarkCompareReport) {
    const auto csv = small_data();
    EXPECT_EQ(run("benchmark --data " + csv + " --runs 3 --models shlffnn,qrnn --out " + path("b")), 2);
    ASSERT_EQ(run("benchmark --data " + csv + " --runs 3 --models shlffnn,qrnn --epochs 20 --hidden 2 --seed 5 --quiet"
                  " --out " + path("b")),
              0);
    const auto result = load(path("b/result.json"));
    EXPECT_EQ(result.at("models"), (json{"shlffnn", "qrnn"}));
    EXPECT_EQ(result.at("metrics").at("RMSE").size(), 3u);
    EXPECT_EQ(result.at("metrics").at("RMSE")[0].size(), 2u);
    EXPECT_TRUE(fs::exists(path("b/result_long.csv")));
    EXPECT_TRUE(fs::exists(path("b/benchmark.manifest.json")));

    ASSERT_EQ(run("compare --result " + path("b/result.json") + " --out " + path("c")), 0);
    const auto cmp = load(path("c/comparison.json"));
    EXPECT_EQ(cmp.at("kind"), "comparison_report");
    EXPECT_TRUE(fs::exists(path("c/comparison.txt")));
    EXPECT_TRUE(fs::exists(path("c/tukey.txt")));

    ASSERT_EQ(run("report --format csv --result " + path("b/result.json") + " --comparison " + path("c/comparison.json") +
                  " --out " + path("rc")),
              0);
    EXPECT_TRUE(fs::exists(path("rc/box_stats.csv")));
    EXPECT_TRUE(fs::exists(path("rc/tukey.csv")));
    for (const auto& e : fs::directory_iterator(path("rc"))) EXPECT_NE(e.path().extension(), ".svg");

    ASSERT_EQ(run("report --result " + path("b/result.json") + " --out " + path("rs")), 0);
    EXPECT_TRUE(fs::exists(path("rs/boxplot.svg")));
    EXPECT_TRUE(fs::exists(path("rs/tukey_RMSE.svg")));
    EXPECT_EQ(run("report --format pdf --result " + path("b/result.json") + " --out " + path("rp")), 2);
    EXPECT_FALSE(has_tmp_files(dir));
}

TEST_F(Cli, SingleRunCannotBeCompared) {
    const auto csv = small_data();
    ASSERT_EQ(run("benchmark --data " + csv + " --runs 1 --models shlffnn,gdbpnn --epochs 5 --seed 5 --quiet --out " +
                  path("b")),
              0);
    EXPECT_EQ(run("compare --result " + path("b/result.json") + " --out " + path("c")), 3);
}

TEST_F(Cli, ReplayReproducesOutputs) {
    const auto csv = small_data();
    ASSERT_EQ(run("benchmark --data " + csv + " --runs 2 --models gdbpnn,bpwdnn --epochs 10 --hidden 2 --seed 8 --quiet"
                  " --out " + path("b")),
              0);
    ASSERT_EQ(run("replay " + path("b/benchmark.manifest.json") + " --out " + path("b2")), 0);
    EXPECT_EQ(slurp(path("b/result.json")), slurp(path("b2/result.json")));
    EXPECT_EQ(slurp(path("b/result_long.csv")), slurp(path("b2/result_long.csv")));

    ASSERT_EQ(run("train --model qrnn --epochs 10 --hidden 2 --seed 2 --data " + csv + " --out " + path("t")), 0);
    ASSERT_EQ(run("replay " + path("t/train.manifest.json") + " --out " + path("t2")), 0);
    for (const char* f : {"network.json", "metrics.json", "trace.csv", "predictions.csv"}) {
        EXPECT_EQ(slurp(dir / "t" / f), slurp(dir / "t2" / f)) << f;
    }

    {
        auto text = slurp(csv);
        text[text.size() - 2] = text[text.size() - 2] == '1' ? '2' : '1';
        std::ofstream(csv, std::ios::binary) << text;
    }
    EXPECT_EQ(run("replay " + path("t/train.manifest.json") + " --out " + path("t3")), 3);
}

TEST_F(Cli, OutDirFromEnvironment) {
    ASSERT_EQ(run("gen --n 20 --p 3 --informative 2 --seed 1", "NNBENCH_OUT_DIR=" + path("env")), 0);
    EXPECT_TRUE(fs::exists(path("env/data.csv")));
    EXPECT_TRUE(fs::exists(path("env/data.json")));
}

TEST(CliIo, AtomicWriteLeavesNoTemporaries) {
    const auto dir = fs::temp_directory_path() / "nnbench_io_test";
    fs::remove_all(dir);
    nnbench::cli::write_atomic(dir / "sub" / "f.txt", "hello");
    EXPECT_EQ(slurp(dir / "sub" / "f.txt"), "hello");
    nnbench::cli::write_atomic(dir / "sub" / "f.txt", "again");
    EXPECT_EQ(slurp(dir / "sub" / "f.txt"), "again");
    EXPECT_FALSE(has_tmp_files(dir));
    const auto path = dir / "abc.txt";
    nnbench::cli::write_atomic(path, "abc");
    EXPECT_EQ(nnbench::cli::sha256_file(path), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove_all(dir);
}
