#ifndef PAVSS_REPORT_IO_HPP
#define PAVSS_REPORT_IO_HPP

#include "pavss/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pavss {

/// Ordered key/value pairs echoed as "# key = value" header lines.
using HeaderFields = std::vector<std::pair<std::string, std::string>>;

HeaderFields config_header(const SystemConfig& config);

/// "N meanrate" rows for one solver, six significant digits.
void write_rate_vs_n(std::ostream& os, const AggregateResult& result, Solver solver, const HeaderFields& header);

/// CSV with columns N,solver,mean_rate,mean_evals,mean_active_count at full precision.
void write_summary_csv(std::ostream& os, const AggregateResult& result, const HeaderFields& header);

/// "stage meanrate" rows, stage = 1..len.
void write_convergence_dat(std::ostream& os, const ConvergenceCurve& curve, const HeaderFields& header);
void write_convergence_csv(std::ostream& os, const ConvergenceCurve& curve, const HeaderFields& header);

struct SummaryRow {
    std::size_t n_antennas = 0;
    Solver solver = Solver::vss;
    double mean_rate = 0.0;
    double mean_evaluations = 0.0;
    double mean_active_count = 0.0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Parses write_summary_csv output; '#' lines and the column header are skipped.
std::vector<SummaryRow> read_summary_csv(std::istream& is);

/// Whitespace-separated two-column rows; '#' lines are skipped. Throws
/// std::runtime_error on a malformed line.
std::vector<std::pair<double, double>> read_two_column(std::istream& is);

/// Writes `content` to `path`, throwing std::runtime_error if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace pavss

#endif // PAVSS_REPORT_IO_HPP
