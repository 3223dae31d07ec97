#include <catch2/catch_amalgamated.hpp>

#include "pavss/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pavss;

namespace {

AggregateResult two_solver_result()
{
    AggregateResult r;
    AggregateRow a;
    a.n_antennas = 5;
    a.solver = Solver::vss;
    a.n_trials = 3;
    a.mean_rate = 6.123456789012345;
    a.mean_evaluations = 41.0 / 3.0;
    a.mean_active_count = 2.5;
    AggregateRow b = a;
    b.solver = Solver::pgga;
    b.mean_rate = 5.5;
    AggregateRow c = a;
    c.n_antennas = 10;
    c.mean_rate = 7.25;
    r.rows = {a, b, c};
    return r;
}

} // namespace

TEST_CASE("write_rate_vs_n")
{
    std::ostringstream os;
    write_rate_vs_n(os, two_solver_result(), Solver::vss, {{"seed", "7"}});
    const std::string text = os.str();
    CHECK(text.rfind("# seed = 7\n", 0) == 0);
    CHECK(text.find("# solver = vss\n") != std::string::npos);
    CHECK(text.find("5 6.12346\n") != std::string::npos);
    CHECK(text.find("10 7.25\n") != std::string::npos);
    CHECK(text.find("5.5") == std::string::npos);

    std::istringstream is(text);
    const auto rows = read_two_column(is);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::pair{5.0, 6.12346});
    CHECK(rows[1] == std::pair{10.0, 7.25});
}

TEST_CASE("summary CSV round-trips at full precision")
{
    const auto result = two_solver_result();
    std::ostringstream os;
    write_summary_csv(os, result, config_header(reference_config(5, 1)));
    CHECK(os.str().find("N,solver,mean_rate,mean_evals,mean_active_count\n") != std::string::npos);
    CHECK(os.str().find("# tx_power_dbm = 10\n") != std::string::npos);
    CHECK(os.str().find("# noise_power_dbm = -90\n") != std::string::npos);

    std::istringstream is(os.str());
    const auto rows = read_summary_csv(is);
    REQUIRE(rows.size() == result.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n_antennas == result.rows[i].n_antennas);
        CHECK(rows[i].solver == result.rows[i].solver);
        CHECK(rows[i].mean_rate == result.rows[i].mean_rate);
        CHECK(rows[i].mean_evaluations == result.rows[i].mean_evaluations);
        CHECK(rows[i].mean_active_count == result.rows[i].mean_active_count);
    }
}

TEST_CASE("convergence writers number stages from one")
{
    ConvergenceCurve curve;
    curve.n_antennas = 50;
    curve.n_users = 1;
    curve.n_trials = 4;
    curve.mean_rate = {5.0, 6.5, 7.0, 7.0};
    curve.mean_termination_stage = 3.5;
    curve.max_termination_stage = 4;

    std::ostringstream dat;
    write_convergence_dat(dat, curve, {});
    std::istringstream is(dat.str());
    const auto rows = read_two_column(is);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].first == static_cast<double>(i + 1));
        CHECK(rows[i].second == curve.mean_rate[i]);
    }

    std::ostringstream csv;
    write_convergence_csv(csv, curve, {});
    CHECK(csv.str() == "stage,mean_rate\n1,5\n2,6.5\n3,7\n4,7\n");
}

TEST_CASE("readers reject malformed input")
{
    std::istringstream three("# header\n1 2 3\n");
    CHECK_THROWS_AS(read_two_column(three), std::runtime_error);
    std::istringstream text("1 abc\n");
    CHECK_THROWS_AS(read_two_column(text), std::runtime_error);
    std::istringstream short_row("N,solver,mean_rate,mean_evals,mean_active_count\n5,vss,1.0\n");
    CHECK_THROWS_AS(read_summary_csv(short_row), std::runtime_error);
}

TEST_CASE("write_file")
{
    const auto dir = std::filesystem::temp_directory_path() / "pavss_report_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file(path, "hello\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    CHECK_THROWS_AS(write_file(dir / "missing" / "out.txt", "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
