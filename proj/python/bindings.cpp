#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pavss/baselines.hpp"
#include "pavss/channel.hpp"
#include "pavss/harness.hpp"
#include "pavss/metric.hpp"
#include "pavss/trellis.hpp"
#include "pavss/verify.hpp"

namespace py = pybind11;
using namespace pavss;

namespace {

py::array_t<cplx> gains_array(const ChannelMatrix& B)
{
    py::array_t<cplx> out({B.n_users(), B.n_antennas()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t m = 0; m < B.n_users(); ++m)
        for (std::size_t n = 0; n < B.n_antennas(); ++n)
            view(m, n) = B(m, n);
    return out;
}

ChannelMatrix matrix_from_array(py::array_t<cplx, py::array::c_style | py::array::forcecast> gains)
{
    if (gains.ndim() == 1)
        gains = gains.reshape({py::ssize_t{1}, gains.shape(0)});
    if (gains.ndim() != 2)
        throw std::invalid_argument("gains must be a 1-D or 2-D array");
    const auto rows = static_cast<std::size_t>(gains.shape(0));
    const auto cols = static_cast<std::size_t>(gains.shape(1));
    std::vector<cplx> flat(gains.data(), gains.data() + rows * cols);
    return ChannelMatrix(rows, cols, std::move(flat));
}

ActivationVector to_activation(const std::vector<int>& mask)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(mask.size());
    for (int b : mask)
        bits.push_back(static_cast<std::uint8_t>(b != 0));
    return ActivationVector(std::move(bits));
}

std::vector<int> to_mask(const ActivationVector& a)
{
    return {a.mask().begin(), a.mask().end()};
}

py::dict solver_dict(const SolverResult& r)
{
    py::dict d;
    d["activation"] = to_mask(r.activation);
    d["metric"] = r.metric;
    d["evaluations"] = r.evaluations;
    d["solver"] = r.solver_name;
    return d;
}

} // namespace

PYBIND11_MODULE(_pavss, m)
{
    m.doc() = "Viterbi state selection for waveguide-fed pinching-antenna arrays";

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n_antennas", &SystemConfig::n_antennas)
        .def_readwrite("n_users", &SystemConfig::n_users)
        .def_readwrite("room_side", &SystemConfig::room_side)
        .def_readwrite("height", &SystemConfig::height)
        .def_readwrite("carrier_freq", &SystemConfig::carrier_freq)
        .def_readwrite("refractive_index", &SystemConfig::refractive_index)
        .def_readwrite("tx_power", &SystemConfig::tx_power)
        .def_readwrite("noise_power", &SystemConfig::noise_power)
        .def_readwrite("phase_bins", &SystemConfig::phase_bins)
        .def_readwrite("feed_x", &SystemConfig::feed_x)
        .def("validate", &SystemConfig::validate)
        .def("wavelength", &SystemConfig::wavelength)
        .def("guided_wavelength", &SystemConfig::guided_wavelength)
        .def("path_loss_factor", &SystemConfig::path_loss_factor)
        .def("snr_scale", &SystemConfig::snr_scale);

    m.def("reference_config", &reference_config, py::arg("n_antennas"), py::arg("n_users") = 1);
    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("watts_to_dbm", &watts_to_dbm);

    m.def("pa_positions", [](const SystemConfig& c) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& p : pa_positions(c))
            out.emplace_back(p.x, p.y, p.z);
        return out;
    });
    m.def(
        "sample_users",
        [](std::uint64_t seed, const SystemConfig& c) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& p : sample_users(seed, c).positions)
                out.emplace_back(p.x, p.y, p.z);
            return out;
        },
        py::arg("seed"), py::arg("config"));

    py::class_<ChannelMatrix>(m, "ChannelMatrix")
        .def(py::init(&matrix_from_array), py::arg("gains"))
        .def_property_readonly("n_users", &ChannelMatrix::n_users)
        .def_property_readonly("n_antennas", &ChannelMatrix::n_antennas)
        .def_property_readonly("gains", &gains_array);

    m.def(
        "build_channel_matrix",
        [](const SystemConfig& c, const std::vector<std::tuple<double, double, double>>& users) {
            UserPlacement placement;
            for (const auto& [x, y, z] : users)
                placement.positions.push_back({x, y, z});
            return build_channel_matrix(c, placement);
        },
        py::arg("config"), py::arg("users"));

    m.def("accumulated_signal", [](const ChannelMatrix& B, const std::vector<int>& mask) {
        return accumulated_signal(B, to_activation(mask));
    });
    m.def("maxmin_metric", [](const ChannelMatrix& B, const std::vector<int>& mask) {
        return maxmin_metric(B, to_activation(mask));
    });
    m.def("rate_report", [](const SystemConfig& c, const ChannelMatrix& B, const std::vector<int>& mask) {
        const auto r = rate_report(c, B, to_activation(mask));
        py::dict d;
        d["accumulated"] = r.accumulated;
        d["metric"] = r.metric;
        d["per_user_snr"] = r.per_user_snr;
        d["per_user_rate"] = r.per_user_rate;
        d["min_rate"] = r.min_rate;
        return d;
    });

    m.def("quantize_phase", &quantize_phase, py::arg("phi"), py::arg("q_bins"));
    m.def("state_of", [](const std::vector<cplx>& z, std::size_t q) { return state_of(z, q).bins; });

    m.def(
        "vss_select",
        [](const ChannelMatrix& B, std::size_t q) {
            const auto r = vss_select(B, q);
            py::dict d;
            d["activation"] = to_mask(r.best_activation);
            d["metric"] = r.best_metric;
            d["running_best"] = r.trace.running_best;
            d["termination_stage"] = r.trace.termination_stage;
            d["best_stage"] = r.trace.best_stage;
            d["metric_evaluations"] = r.trace.metric_evaluations;
            d["survivors_per_stage"] = r.trace.survivors_per_stage;
            return d;
        },
        py::arg("B"), py::arg("q_bins") = 4);

    m.def(
        "brute_force_select",
        [](const ChannelMatrix& B, std::size_t cap) { return solver_dict(brute_force_select(B, cap)); },
        py::arg("B"), py::arg("max_antennas") = kDefaultBruteForceCap);
    m.def("greedy_pgga_select", [](const ChannelMatrix& B) { return solver_dict(greedy_pgga_select(B)); });
    m.def("best_singleton", [](const ChannelMatrix& B) { return solver_dict(best_singleton(B)); });

    m.def(
        "run_sweep",
        [](const SystemConfig& base, const std::vector<std::size_t>& n_values, const std::vector<std::string>& solvers,
           std::size_t n_trials, std::uint64_t seed) {
            ExperimentSpec spec;
            spec.base_config = base;
            spec.n_values = n_values;
            for (const auto& s : solvers)
                spec.solvers.push_back(parse_solver(s));
            spec.n_trials = n_trials;
            spec.seed = seed;
            py::list rows;
            for (const auto& r : run_sweep(spec).rows) {
                py::dict d;
                d["N"] = r.n_antennas;
                d["solver"] = std::string(solver_label(r.solver));
                d["mean_rate"] = r.mean_rate;
                d["mean_metric"] = r.mean_metric;
                d["mean_evaluations"] = r.mean_evaluations;
                d["mean_active_count"] = r.mean_active_count;
                d["mean_termination_stage"] = r.mean_termination_stage;
                rows.append(d);
            }
            return rows;
        },
        py::arg("config"), py::arg("n_values"), py::arg("solvers"), py::arg("n_trials"), py::arg("seed"));

    m.def(
        "run_convergence",
        [](const SystemConfig& c, std::size_t n_trials, std::uint64_t seed) {
            const auto curve = run_convergence(c, n_trials, seed);
            py::dict d;
            d["mean_rate"] = curve.mean_rate;
            d["mean_termination_stage"] = curve.mean_termination_stage;
            d["mean_best_stage"] = curve.mean_best_stage;
            return d;
        },
        py::arg("config"), py::arg("n_trials"), py::arg("seed"));

    m.def(
        "verify",
        [](bool quick, std::uint64_t seed) {
            verify::Options o;
            o.quick = quick;
            o.seed = seed;
            py::list out;
            for (const auto& r : verify::run(verify::oracle_and_invariant_criteria(), o)) {
                py::dict d;
                d["id"] = static_cast<int>(r.id);
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("quick") = true, py::arg("seed") = 7);
}
