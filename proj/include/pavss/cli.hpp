#ifndef PAVSS_CLI_HPP
#define PAVSS_CLI_HPP

#include "pavss/channel.hpp"
#include "pavss/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pavss::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kVerificationFailed = 2,
};

enum class OutputFormat { dat, csv, both };

OutputFormat parse_format(std::string_view s);

/// "10", "50,80,100", "5..50:5" (inclusive, step defaults to 1), or a comma
/// list mixing values and ranges.
std::vector<std::size_t> parse_n_values(std::string_view spec);

std::vector<Solver> parse_solvers(std::string_view spec);

/// Flag values as given on the command line, before unit conversion.
struct CliConfig {
    std::string n_values;
    std::size_t users = 1;
    std::size_t trials = 200;
    std::uint64_t seed = 7;
    std::string solvers = "vss,pgga";
    std::size_t q_bins = 4;
    double power_dbm = 10.0;
    double noise_dbm = -90.0;
    double room = 50.0;
    double height = 3.0;
    double freq_ghz = 28.0;
    double neff = 1.4;
    std::optional<double> feed_x;
    std::filesystem::path out_dir = ".";
    std::string format = "both";
    std::size_t brute_cap = kDefaultBruteForceCap;
    bool full_trials = false;

    /// dBm -> W, GHz -> Hz, feed defaults to -room/2. Validates the result.
    SystemConfig system_config() const;
};

/// Parses "key = value" lines ('#' comments allowed) into "--key value"
/// arguments. Boolean flags take true/false.
std::vector<std::string> config_file_arguments(std::istream& is);

/// Entry point shared by the executable and the tests; `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pavss::cli

#endif // PAVSS_CLI_HPP
