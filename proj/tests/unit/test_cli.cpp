#include "shotr/cli.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shotr;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "shotr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("shotr_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        rows.push_back(f);
    }
    return rows;
}

}  // namespace

TEST(Cli, ReconstructTwoPointTrack) {
    const std::string in = write_temp("two.csv", "track,t,x\n7,1.0,2.0\n7,3.0,6.0\n");
    const CliRun r = run({"reconstruct", "--input", in, "--degree", "1", "--limiter", "none"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    const auto& cell = j["tracks"][0]["axes"]["x"][0];
    EXPECT_EQ(j["tracks"][0]["track"], "7");
    EXPECT_DOUBLE_EQ(cell["center"].get<double>(), 2.0);
    EXPECT_DOUBLE_EQ(cell["width"].get<double>(), 2.0);
    EXPECT_NEAR(cell["coeffs"][0].get<double>(), 4.0, 1e-14);
    EXPECT_NEAR(cell["coeffs"][1].get<double>(), 4.0, 1e-14);
}

TEST(Cli, ReconstructIsDeterministic) {
    const std::string in = write_temp("det.csv", "track,t,x,y\n1,0,0,1\n1,1,1,0.5\n1,2,4,0.2\n1,3,9,0\n1,4,7,1\n2,0,1,1\n2,1,2,2\n");
    const CliRun a = run({"reconstruct", "-i", in});
    const CliRun b = run({"reconstruct", "-i", in, "--threads", "3"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DegreeReductionWarns) {
    const std::string in = write_temp("short.csv", "track,t,x\n1,0,0\n1,1,1\n1,2,0\n1,3,1\n");
    const CliRun r = run({"reconstruct", "-i", in, "--degree", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("degree reduced from 5 to 3"), std::string::npos);
    EXPECT_EQ(nlohmann::json::parse(r.out)["tracks"][0]["degree"], 3);
}

TEST(Cli, KinematicsStationaryAndRowCount) {
    const std::string in = write_temp("still.csv", "track,t,x,y\na,0,1,1\na,1,1,1\na,2,1,1\nb,0,2,2\nb,0.5,2,2\nb,1.5,2,2\nb,2,2,2\n");
    const CliRun r = run({"kinematics", "-i", in});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"track", "t", "x", "y", "vx", "vy", "ax", "ay", "speed"}));
    // Three samples cap track a at degree 2: 2 cells x 3 points; track b: 3 cells x 4 points.
    EXPECT_EQ(rows.size(), 1u + 2 * 3 + 3 * 4);
    for (std::size_t k = 1; k < rows.size(); ++k)
        for (std::size_t c = 4; c < 9; ++c) EXPECT_NEAR(std::stod(rows[k][c]), 0.0, 1e-12);
}

TEST(Cli, KinematicsSpeedsMatchOfflineEvaluation) {
    test::Rng rng(3);
    const auto t = test::random_times(rng, 9);
    std::ostringstream text;
    text << "track,t,x,y\n";
    std::vector<Point> x;
    for (double s : t) {
        x.push_back({std::sin(s), std::cos(s), 0});
        text << "p," << format_real(s) << ',' << format_real(x.back()[0]) << ',' << format_real(x.back()[1]) << '\n';
    }
    const CliRun r = run({"kinematics", "-i", write_temp("speed.csv", text.str()), "--limiter", "none"});
    ASSERT_EQ(r.code, 0);
    const auto axes = reconstruct_track(TrackSeries("p", t, x, 2), 3, Limiter::none);
    const auto rows = csv(r.out);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const KinematicSample s = eval_at(axes, std::stod(rows[k][1]));
        EXPECT_NEAR(std::stod(rows[k][8]), s.speed(), 1e-13);
    }
}

TEST(Cli, LengthAndSummary) {
    const std::string in = write_temp("poly.csv", "track,t,x,y\n1,0,0,0\n1,1,1,0\n1,2,1,1\n");
    const CliRun len = run({"length", "-i", in, "--degree", "1", "--limiter", "none", "--geom-degree", "1"});
    ASSERT_EQ(len.code, 0);
    const auto lrows = csv(len.out);
    ASSERT_EQ(lrows.size(), 2u);
    EXPECT_NEAR(std::stod(lrows[1][1]), 2.0, 1e-14);
    EXPECT_EQ(lrows[1][2], "2");
    const CliRun sum = run({"summary", "-i", in, "--degree", "1"});
    ASSERT_EQ(sum.code, 0);
    EXPECT_EQ(csv(sum.out)[0], (std::vector<std::string>{"track", "vL", "vD_x", "vD_y", "vM_x", "vM_y", "L", "duration"}));
}

TEST(Cli, ConvergenceCheckPasses) {
    const CliRun r = run({"convergence", "--case", "conv3d", "--degrees", "1,2,3", "--check"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"case", "N", "dt", "axis", "norm", "error", "order"}));
    EXPECT_EQ(rows.size(), 1u + 3 * 4 * 3 * 3);
    EXPECT_EQ(rows[1][6], "");
}

TEST(Cli, CompareRowCount) {
    const CliRun r = run({"compare", "--case", "tanhcos2d"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(csv(r.out).size(), 1u + 2 * 3 * 2);
}

TEST(Cli, BacktraceOnFile) {
    std::ostringstream text;
    text << "track,t,x,y\n";
    for (int k = 0; k < 30; ++k) {
        const double t = 0.144 * k;
        text << "1," << t << ',' << std::sin(t) << ',' << 0.3 * t << '\n';
    }
    const CliRun r = run({"backtrace", "-i", write_temp("bt.csv", text.str()), "--dtau", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"track", "method", "endpoint_err", "L1", "L2", "Linf"}));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][1], "RK2+P1");
    EXPECT_EQ(rows[2][1], "RK4+P3");
}

TEST(Cli, BacktraceSyntheticCheck) {
    const CliRun r = run({"backtrace", "--case", "tanhcos2d", "--check"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ErrorsAndExitCodes) {
    EXPECT_EQ(run({"reconstruct", "-i", "/nonexistent/file.csv"}).code, 1);
    EXPECT_EQ(run({"reconstruct"}).code, 1);
    EXPECT_EQ(run({"reconstruct", "-i", "x", "--degree", "0"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    const std::string dup = write_temp("dup.csv", "track,t,x\nq,0,0\nq,0,1\n");
    const CliRun d = run({"summary", "-i", dup});
    EXPECT_EQ(d.code, 1);
    EXPECT_NE(d.err.find("'q'"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CheckFailureExitCode) {
    // A single tiny mesh cannot satisfy the comparison gate.
    const CliRun r = run({"compare", "--meshes", "11", "--check"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("check failed"), std::string::npos);
    EXPECT_FALSE(r.out.empty());
}

TEST(Cli, OutputFile) {
    const std::string in = write_temp("of.csv", "track,t,x\n1,0,0\n1,1,1\n");
    const auto out = std::filesystem::temp_directory_path() / "shotr_cli_out.json";
    const CliRun r = run({"reconstruct", "-i", in, "-o", out.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(out);
    EXPECT_TRUE(nlohmann::json::accept(f));
}

TEST(Cli, LinearModeMatchesNaiveInterpolation) {
    test::Rng rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = test::random_times(rng, 2 + rng() % 12);
        std::ostringstream text;
        text << "track,t,x\n";
        std::vector<double> v;
        for (double s : t) {
            v.push_back(test::uniform(rng, -10, 10));
            text << "z," << format_real(s) << ',' << format_real(v.back()) << '\n';
        }
        const CliRun r = run({"kinematics", "-i", write_temp("spt.csv", text.str()), "--degree", "1", "--limiter", "none"});
        ASSERT_EQ(r.code, 0);
        const auto rows = csv(r.out);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double s = std::stod(rows[k][1]);
            std::size_t i = 0;
            while (i + 2 < t.size() && s > t[i + 1]) ++i;
            const double naive = v[i] + (v[i + 1] - v[i]) * (s - t[i]) / (t[i + 1] - t[i]);
            EXPECT_NEAR(std::stod(rows[k][2]), naive, 1e-12);
        }
    }
}

TEST(Cli, SampleDataFiles) {
    const std::string dir = SHOTR_TEST_DATA_DIR;
    const CliRun g = run({"summary", "-i", dir + "/tracks.csv"});
    ASSERT_EQ(g.code, 0) << g.err;
    const auto rows = csv(g.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][0], "cell_a");
    EXPECT_EQ(rows[2][0], "cell_b");

    const CliRun tm = run({"length", "-i", dir + "/trackmate_spots.csv", "--format", "trackmate"});
    ASSERT_EQ(tm.code, 0) << tm.err;
    const auto lr = csv(tm.out);
    ASSERT_EQ(lr.size(), 2u);
    EXPECT_EQ(lr[1][2], "18");
    EXPECT_GT(std::stod(lr[1][1]), 1.8);
}

TEST(Cli, InstalledBinaryRuns) {
    const auto out = std::filesystem::temp_directory_path() / "shotr_cli_binary.csv";
    const std::string cmd = std::string("\"") + SHOTR_CLI_PATH + "\" length -i \"" + SHOTR_TEST_DATA_DIR +
                            "/tracks.csv\" -o \"" + out.string() + "\"";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream f(out);
    std::stringstream text;
    text << f.rdbuf();
    const CliRun in_process = run({"length", "-i", std::string(SHOTR_TEST_DATA_DIR) + "/tracks.csv"});
    EXPECT_EQ(text.str(), in_process.out);
}
