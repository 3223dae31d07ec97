#include "pavss/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pavss {

namespace {

std::string number(double v, const char* format = "%.17g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

void write_header(std::ostream& os, const HeaderFields& header)
{
    for (const auto& [key, value] : header)
        os << "# " << key << " = " << value << '\n';
}

bool skip_line(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

} // namespace

HeaderFields config_header(const SystemConfig& config)
{
    return {
        {"n_users", std::to_string(config.n_users)},
        {"room_side_m", number(config.room_side, "%.10g")},
        {"height_m", number(config.height, "%.10g")},
        {"carrier_freq_hz", number(config.carrier_freq, "%.10g")},
        {"refractive_index", number(config.refractive_index, "%.10g")},
        {"tx_power_dbm", number(watts_to_dbm(config.tx_power), "%.10g")},
        {"noise_power_dbm", number(watts_to_dbm(config.noise_power), "%.10g")},
        {"phase_bins", std::to_string(config.phase_bins)},
        {"feed_x_m", number(config.feed_x, "%.10g")},
    };
}

void write_rate_vs_n(std::ostream& os, const AggregateResult& result, Solver solver, const HeaderFields& header)
{
    write_header(os, header);
    os << "# solver = " << solver_label(solver) << '\n';
    os << "# columns: N mean_min_rate_bps_per_hz\n";
    for (const auto& row : result.rows)
        if (row.solver == solver)
            os << row.n_antennas << ' ' << number(row.mean_rate, "%.6g") << '\n';
}

void write_summary_csv(std::ostream& os, const AggregateResult& result, const HeaderFields& header)
{
    write_header(os, header);
    os << "N,solver,mean_rate,mean_evals,mean_active_count\n";
    for (const auto& row : result.rows) {
        os << row.n_antennas << ',' << solver_label(row.solver) << ',' << number(row.mean_rate) << ','
           << number(row.mean_evaluations) << ',' << number(row.mean_active_count) << '\n';
    }
}

void write_convergence_dat(std::ostream& os, const ConvergenceCurve& curve, const HeaderFields& header)
{
    write_header(os, header);
    os << "# n_antennas = " << curve.n_antennas << '\n';
    os << "# trials = " << curve.n_trials << '\n';
    os << "# mean_termination_stage = " << number(curve.mean_termination_stage, "%.6g") << '\n';
    os << "# columns: stage mean_running_best_rate_bps_per_hz\n";
    for (std::size_t i = 0; i < curve.mean_rate.size(); ++i)
        os << (i + 1) << ' ' << number(curve.mean_rate[i], "%.6g") << '\n';
}

void write_convergence_csv(std::ostream& os, const ConvergenceCurve& curve, const HeaderFields& header)
{
    write_header(os, header);
    os << "stage,mean_rate\n";
    for (std::size_t i = 0; i < curve.mean_rate.size(); ++i)
        os << (i + 1) << ',' << number(curve.mean_rate[i]) << '\n';
}

std::vector<SummaryRow> read_summary_csv(std::istream& is)
{
    std::vector<SummaryRow> rows;
    std::string line;
    bool saw_columns = false;
    while (std::getline(is, line)) {
        if (skip_line(line))
            continue;
        if (!saw_columns) {
            saw_columns = true;
            continue;
        }
        std::istringstream fields(line);
        std::string n, solver, rate, evals, active;
        if (!std::getline(fields, n, ',') || !std::getline(fields, solver, ',') || !std::getline(fields, rate, ',') ||
            !std::getline(fields, evals, ',') || !std::getline(fields, active))
            throw std::runtime_error("summary csv: malformed row '" + line + "'");
        SummaryRow row;
        row.n_antennas = std::stoul(n);
        row.solver = parse_solver(solver);
        row.mean_rate = std::stod(rate);
        row.mean_evaluations = std::stod(evals);
        row.mean_active_count = std::stod(active);
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::pair<double, double>> read_two_column(std::istream& is)
{
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (skip_line(line))
            continue;
        std::istringstream fields(line);
        double a = 0.0, b = 0.0;
        std::string rest;
        if (!(fields >> a >> b) || (fields >> rest))
            throw std::runtime_error("malformed two-column row '" + line + "'");
        rows.emplace_back(a, b);
    }
    return rows;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace pavss
