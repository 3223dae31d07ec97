#include <catch2/catch_amalgamated.hpp>

#include "pavss/cli.hpp"
#include "pavss/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pavss;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("pavss_cli_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::pair<double, double>> read_dat(const fs::path& p)
{
    std::ifstream in(p);
    return read_two_column(in);
}

std::vector<SummaryRow> read_csv(const fs::path& p)
{
    std::ifstream in(p);
    return read_summary_csv(in);
}

} // namespace

TEST_CASE("parse_n_values")
{
    CHECK(cli::parse_n_values("10") == std::vector<std::size_t>{10});
    CHECK(cli::parse_n_values("50,80,100") == std::vector<std::size_t>{50, 80, 100});
    CHECK(cli::parse_n_values("5..20:5") == std::vector<std::size_t>{5, 10, 15, 20});
    CHECK(cli::parse_n_values("3..5") == std::vector<std::size_t>{3, 4, 5});
    CHECK(cli::parse_n_values("1, 4..6, 9") == std::vector<std::size_t>{1, 4, 5, 6, 9});
    CHECK(cli::parse_n_values("5..50:5").size() == 10);
    CHECK_THROWS_AS(cli::parse_n_values(""), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_n_values("0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_n_values("10..5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_n_values("5..10:0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_n_values("ten"), std::invalid_argument);
}

TEST_CASE("parse_solvers drops duplicates and rejects unknown names")
{
    CHECK(cli::parse_solvers("vss,pgga,vss") == std::vector<Solver>{Solver::vss, Solver::pgga});
    CHECK_THROWS_AS(cli::parse_solvers("vss,magic"), std::invalid_argument);
}

TEST_CASE("CliConfig converts units")
{
    cli::CliConfig cfg;
    cfg.users = 2;
    const auto c = cfg.system_config();
    CHECK(c.tx_power == Catch::Approx(1e-2));
    CHECK(c.noise_power == Catch::Approx(1e-12));
    CHECK(c.carrier_freq == 28e9);
    CHECK(c.feed_x == -25.0);
    cfg.feed_x = 3.0;
    CHECK(cfg.system_config().feed_x == 3.0);
    cfg.neff = 0.5;
    CHECK_THROWS_AS(cfg.system_config(), std::invalid_argument);
}

TEST_CASE("config_file_arguments")
{
    std::istringstream is("# comment\nusers = 2\nq_bins=8  # trailing\n\nfull-trials = true\nquick = false\n");
    CHECK(cli::config_file_arguments(is) ==
          std::vector<std::string>{"--users", "2", "--q-bins", "8", "--full-trials"});
    std::istringstream bad("users 2\n");
    CHECK_THROWS_AS(cli::config_file_arguments(bad), std::invalid_argument);
}

TEST_CASE("sweep writes one row per N for every solver")
{
    TempDir dir("sweep");
    const auto r = invoke({"sweep", "--users", "2", "--trials", "2", "--out-dir", dir.path.string()});
    REQUIRE(r.code == cli::kSuccess);
    const auto vss = read_dat(dir.path / "vss_rate_vs_N.dat");
    const auto pgga = read_dat(dir.path / "pgga_rate_vs_N.dat");
    REQUIRE(vss.size() == 10);
    REQUIRE(pgga.size() == 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(vss[i].first == static_cast<double>(5 * (i + 1)));

    SECTION("CSV carries the same values at full precision")
    {
        const auto rows = read_csv(dir.path / "summary.csv");
        REQUIRE(rows.size() == 20);
        for (std::size_t i = 0; i < 10; ++i) {
            const auto& row = rows[2 * i];
            CHECK(row.solver == Solver::vss);
            CHECK(row.n_antennas == 5 * (i + 1));
            CHECK(row.mean_rate == Catch::Approx(vss[i].second).epsilon(1e-5));
        }
    }
    SECTION("reruns are byte-identical")
    {
        TempDir again("sweep_again");
        REQUIRE(invoke({"sweep", "--users", "2", "--trials", "2", "--out-dir", again.path.string()}).code == 0);
        CHECK(slurp(dir.path / "summary.csv") == slurp(again.path / "summary.csv"));
        CHECK(slurp(dir.path / "vss_rate_vs_N.dat") == slurp(again.path / "vss_rate_vs_N.dat"));
    }
}

TEST_CASE("sweep with brute force at N=10")
{
    TempDir dir("brute");
    const auto r = invoke({"sweep", "--n", "10", "--solvers", "vss,brute", "--trials", "1", "--format", "csv",
                           "--out-dir", dir.path.string()});
    REQUIRE(r.code == cli::kSuccess);
    CHECK_FALSE(fs::exists(dir.path / "vss_rate_vs_N.dat"));
    const auto rows = read_csv(dir.path / "summary.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].solver == Solver::brute_force);
    CHECK(rows[1].mean_rate >= rows[0].mean_rate - 1e-12);
    CHECK(rows[1].mean_evaluations == 1023.0);
}

TEST_CASE("convergence files")
{
    TempDir dir("conv");
    const auto r = invoke({"convergence", "--n", "1,30", "--trials", "5", "--out-dir", dir.path.string()});
    REQUIRE(r.code == cli::kSuccess);

    const auto one = read_dat(dir.path / "conv_N1_M1.dat");
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == 1.0);

    const auto thirty = read_dat(dir.path / "conv_N30_M1.dat");
    REQUIRE_FALSE(thirty.empty());
    CHECK(thirty.size() <= 30);
    for (std::size_t i = 0; i < thirty.size(); ++i) {
        CHECK(thirty[i].first == static_cast<double>(i + 1));
        if (i > 0)
            CHECK(thirty[i].second >= thirty[i - 1].second);
    }
    CHECK(fs::exists(dir.path / "conv_N30_M1.csv"));
}

TEST_CASE("verify exit status reflects the printed results")
{
    const auto r = invoke({"verify", "--quick"});
    CHECK(r.out.find("C1 ") != std::string::npos);
    CHECK(r.out.find("C8 ") != std::string::npos);
    CHECK(r.out.find("C5 ") == std::string::npos);
    const bool any_failed = r.out.find("[FAIL]") != std::string::npos;
    CHECK(r.code == (any_failed ? cli::kVerificationFailed : cli::kSuccess));
}

TEST_CASE("verify catches a broken quantizer")
{
    const auto r = invoke({"verify", "--quick", "--fault-quantizer"});
    CHECK(r.code == cli::kVerificationFailed);
    CHECK(r.out.find("[FAIL] C7") != std::string::npos);
}

TEST_CASE("usage errors exit with 1")
{
    TempDir dir("errors");
    CHECK(invoke({}).code == cli::kUsageError);
    CHECK(invoke({"sweep", "--neff", "0.5", "--out-dir", dir.path.string()}).code == cli::kUsageError);
    CHECK(invoke({"sweep", "--n", "30", "--solvers", "brute", "--out-dir", dir.path.string()}).code ==
          cli::kUsageError);
    CHECK(invoke({"sweep", "--format", "xml"}).code == cli::kUsageError);
    CHECK(invoke({"sweep", "--config", (dir.path / "absent.cfg").string()}).code == cli::kUsageError);

    const auto blocker = dir.path / "file";
    std::ofstream(blocker) << "x";
    const auto r = invoke({"sweep", "--n", "5", "--trials", "1", "--out-dir", (blocker / "sub").string()});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("help exits with 0")
{
    const auto r = invoke({"--help"});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("config file values yield to explicit flags")
{
    TempDir dir("config");
    const auto cfg = dir.path / "run.cfg";
    std::ofstream(cfg) << "n = 6\ntrials = 1\nsolvers = vss,singleton\nformat = csv\nout_dir = " << dir.path.string()
                       << "\n";

    REQUIRE(invoke({"sweep", "--config", cfg.string()}).code == cli::kSuccess);
    auto rows = read_csv(dir.path / "summary.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n_antennas == 6);
    CHECK(rows[1].solver == Solver::best_singleton);

    REQUIRE(invoke({"sweep", "--config", cfg.string(), "--n", "7", "--solvers", "pgga"}).code == cli::kSuccess);
    rows = read_csv(dir.path / "summary.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_antennas == 7);
    CHECK(rows[0].solver == Solver::pgga);
}
