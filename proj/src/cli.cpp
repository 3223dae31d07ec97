#include "pavss/cli.hpp"

#include "pavss/report_io.hpp"
#include "pavss/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pavss::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_count(std::string_view s)
{
    const std::string t = trim(s);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw std::invalid_argument("invalid antenna count '" + t + "'");
    return value;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

void add_common_options(CLI::App& sub, CliConfig& cfg)
{
    sub.add_option("--n", cfg.n_values, "Antenna counts: value, comma list, or a..b:step");
    sub.add_option("--users", cfg.users, "Number of users M")->check(CLI::PositiveNumber);
    sub.add_option("--trials", cfg.trials, "Random placements per N")->check(CLI::PositiveNumber);
    sub.add_flag("--full-trials", cfg.full_trials, "Use 1000 placements per N");
    sub.add_option("--seed", cfg.seed, "Master seed");
    sub.add_option("--q-bins", cfg.q_bins, "Phase bins Q")->check(CLI::PositiveNumber);
    sub.add_option("--power-dbm", cfg.power_dbm, "Transmit power in dBm");
    sub.add_option("--noise-dbm", cfg.noise_dbm, "Noise power in dBm");
    sub.add_option("--room", cfg.room, "Room side / waveguide length L in meters");
    sub.add_option("--height", cfg.height, "Waveguide height H in meters");
    sub.add_option("--freq-ghz", cfg.freq_ghz, "Carrier frequency in GHz");
    sub.add_option("--neff", cfg.neff, "Effective refractive index of the waveguide");
    sub.add_option("--feed-x", cfg.feed_x, "Feedpoint x-coordinate in meters (default -L/2)");
    sub.add_option("--out-dir", cfg.out_dir, "Output directory");
    sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"dat", "csv", "both"}));
    sub.add_option("--config", "Key-value config file (flags take precedence)");
}

HeaderFields run_header(std::string_view command, const CliConfig& cfg, const SystemConfig& system,
                        const std::vector<std::size_t>& n_values, std::size_t trials)
{
    std::vector<std::string> ns;
    for (auto n : n_values)
        ns.push_back(std::to_string(n));
    HeaderFields h{{"command", std::string(command)},
                   {"n_values", join(ns, ",")},
                   {"trials", std::to_string(trials)},
                   {"seed", std::to_string(cfg.seed)}};
    if (command == "sweep")
        h.emplace_back("solvers", cfg.solvers);
    for (auto& kv : config_header(system))
        h.push_back(std::move(kv));
    return h;
}

void ensure_out_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("output directory '" + dir.string() + "' is not usable");
}

std::string render(auto&& writer)
{
    std::ostringstream os;
    writer(os);
    return os.str();
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out)
{
    ExperimentSpec spec;
    spec.base_config = cfg.system_config();
    spec.n_values = parse_n_values(cfg.n_values.empty() ? "5..50:5" : cfg.n_values);
    spec.solvers = parse_solvers(cfg.solvers);
    spec.n_trials = cfg.full_trials ? 1000 : cfg.trials;
    spec.seed = cfg.seed;
    spec.options.brute_force_cap = cfg.brute_cap;
    spec.validate();

    ensure_out_dir(cfg.out_dir);
    const auto result = run_sweep(spec);
    const auto header = run_header("sweep", cfg, spec.base_config, spec.n_values, spec.n_trials);
    const auto format = parse_format(cfg.format);

    if (format != OutputFormat::csv) {
        for (Solver s : spec.solvers) {
            const auto path = cfg.out_dir / (std::string(solver_label(s)) + "_rate_vs_N.dat");
            write_file(path, render([&](std::ostream& os) { write_rate_vs_n(os, result, s, header); }));
            out << "wrote " << path.string() << '\n';
        }
    }
    if (format != OutputFormat::dat) {
        const auto path = cfg.out_dir / "summary.csv";
        write_file(path, render([&](std::ostream& os) { write_summary_csv(os, result, header); }));
        out << "wrote " << path.string() << '\n';
    }
    for (const auto& row : result.rows) {
        out << "N=" << row.n_antennas << ' ' << solver_label(row.solver) << " mean_rate=" << row.mean_rate
            << " mean_evals=" << row.mean_evaluations << " mean_active=" << row.mean_active_count << '\n';
    }
    return kSuccess;
}

int cmd_convergence(const CliConfig& cfg, std::ostream& out)
{
    const auto base = cfg.system_config();
    const auto n_values = parse_n_values(cfg.n_values.empty() ? "50,80,100" : cfg.n_values);
    const std::size_t trials = cfg.full_trials ? 1000 : cfg.trials;
    const auto format = parse_format(cfg.format);
    ensure_out_dir(cfg.out_dir);

    const auto header = run_header("convergence", cfg, base, n_values, trials);
    for (auto n : n_values) {
        SystemConfig config = base;
        config.n_antennas = n;
        const auto curve = run_convergence(config, trials, cfg.seed);
        const std::string stem = "conv_N" + std::to_string(n) + "_M" + std::to_string(config.n_users);
        if (format != OutputFormat::csv) {
            const auto path = cfg.out_dir / (stem + ".dat");
            write_file(path, render([&](std::ostream& os) { write_convergence_dat(os, curve, header); }));
            out << "wrote " << path.string() << '\n';
        }
        if (format != OutputFormat::dat) {
            const auto path = cfg.out_dir / (stem + ".csv");
            write_file(path, render([&](std::ostream& os) { write_convergence_csv(os, curve, header); }));
            out << "wrote " << path.string() << '\n';
        }
        out << "N=" << n << " M=" << config.n_users << " final_rate=" << curve.mean_rate.back()
            << " mean_termination_stage=" << curve.mean_termination_stage << '\n';
    }
    return kSuccess;
}

int cmd_verify(bool quick, bool all, std::uint64_t seed, bool fault, std::ostream& out)
{
    verify::Options options;
    options.quick = quick;
    options.seed = seed;
    if (fault)
        options.quantizer = verify::faulty_quantizer;

    const auto criteria = all ? verify::all_criteria() : verify::oracle_and_invariant_criteria();
    std::size_t failed = 0;
    verify::run(criteria, options, [&](const verify::CriterionResult& r) {
        out << verify::format_line(r) << '\n' << std::flush;
        if (!r.passed)
            ++failed;
    });
    out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? kSuccess : kVerificationFailed;
}

// Splices "--key value" pairs from any --config file directly after the
// subcommand name, so explicit flags (parsed later, TakeLast) win.
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    std::vector<std::string> expanded;
    std::optional<std::string> config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!config_path)
        return args;

    std::ifstream in(*config_path);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + *config_path + "'");
    const auto injected = config_file_arguments(in);

    if (rest.empty())
        return injected;
    expanded.push_back(rest.front());
    expanded.insert(expanded.end(), injected.begin(), injected.end());
    expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
    return expanded;
}

} // namespace

OutputFormat parse_format(std::string_view s)
{
    if (s == "dat")
        return OutputFormat::dat;
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "both")
        return OutputFormat::both;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

std::vector<std::size_t> parse_n_values(std::string_view spec)
{
    std::vector<std::size_t> out;
    for (const auto& token : split(spec, ',')) {
        if (token.empty())
            throw std::invalid_argument("empty entry in N list '" + std::string(spec) + "'");
        const auto dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_count(token));
            continue;
        }
        const auto colon = token.find(':', dots);
        const std::size_t first = parse_count(std::string_view(token).substr(0, dots));
        const std::size_t last = parse_count(std::string_view(token).substr(
            dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
        const std::size_t step = colon == std::string::npos ? 1 : parse_count(std::string_view(token).substr(colon + 1));
        if (step == 0 || first > last)
            throw std::invalid_argument("invalid N range '" + token + "'");
        for (std::size_t n = first; n <= last; n += step)
            out.push_back(n);
    }
    for (auto n : out)
        if (n == 0)
            throw std::invalid_argument("N must be >= 1");
    return out;
}

std::vector<Solver> parse_solvers(std::string_view spec)
{
    std::vector<Solver> out;
    for (const auto& name : split(spec, ',')) {
        const Solver s = parse_solver(name);
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    return out;
}

SystemConfig CliConfig::system_config() const
{
    SystemConfig c;
    c.n_antennas = 1;
    c.n_users = users;
    c.room_side = room;
    c.height = height;
    c.carrier_freq = freq_ghz * 1e9;
    c.refractive_index = neff;
    c.tx_power = dbm_to_watts(power_dbm);
    c.noise_power = dbm_to_watts(noise_dbm);
    c.phase_bins = q_bins;
    c.feed_x = feed_x.value_or(-room / 2.0);
    c.validate();
    return c;
}

std::vector<std::string> config_file_arguments(std::istream& is)
{
    std::vector<std::string> args;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': '" + body + "'");
        std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.rfind("--", 0) == 0)
            key = key.substr(2);
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty())
            throw std::invalid_argument("config line with empty key");
        if (value == "false")
            continue;
        args.push_back("--" + key);
        if (value != "true")
            args.push_back(value);
    }
    return args;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pinching-antenna subset selection: Viterbi state selection experiments", "pavss"};
    app.require_subcommand(1);

    CliConfig sweep_cfg;
    CliConfig conv_cfg;
    conv_cfg.trials = 150;

    auto* sweep = app.add_subcommand("sweep", "Mean worst-user rate versus N for each solver");
    sweep->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_common_options(*sweep, sweep_cfg);
    sweep->add_option("--solvers", sweep_cfg.solvers, "Comma list of vss, brute, pgga, singleton");
    sweep->add_option("--brute-cap", sweep_cfg.brute_cap, "Largest N allowed for brute force");

    auto* conv = app.add_subcommand("convergence", "Mean running-best rate per trellis stage");
    conv->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_common_options(*conv, conv_cfg);

    bool quick = false;
    bool all = false;
    bool fault = false;
    std::uint64_t verify_seed = 7;
    auto* ver = app.add_subcommand("verify", "Oracle equivalence, invariant and complexity checks");
    ver->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    ver->add_flag("--quick", quick, "Reduced trial counts, same thresholds");
    ver->add_flag("--all", all, "Also run the trend and convergence criteria");
    ver->add_option("--seed", verify_seed, "Base seed");
    ver->add_flag("--fault-quantizer", fault, "Test hook: use an off-by-one quantizer")->group("");
    ver->add_option("--config", "Key-value config file (flags take precedence)");

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(sweep_cfg, out);
        if (conv->parsed())
            return cmd_convergence(conv_cfg, out);
        return cmd_verify(quick, all, verify_seed, fault, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

} // namespace pavss::cli
