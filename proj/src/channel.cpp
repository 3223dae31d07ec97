#include "pavss/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace pavss {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(std::string("SystemConfig: ") + what);
}

} // namespace

void SystemConfig::validate() const
{
    require(n_antennas >= 1, "n_antennas must be >= 1");
    require(n_users >= 1, "n_users must be >= 1");
    require(phase_bins >= 1, "phase_bins must be >= 1");
    require(std::isfinite(room_side) && room_side > 0.0, "room_side must be positive");
    require(std::isfinite(height) && height > 0.0, "height must be positive");
    require(std::isfinite(carrier_freq) && carrier_freq > 0.0, "carrier_freq must be positive");
    require(std::isfinite(refractive_index) && refractive_index >= 1.0, "refractive_index must be >= 1");
    require(std::isfinite(tx_power) && tx_power > 0.0, "tx_power must be positive");
    require(std::isfinite(noise_power) && noise_power > 0.0, "noise_power must be positive");
    require(std::isfinite(feed_x), "feed_x must be finite");
    const double lambda = wavelength();
    const double lambda_g = guided_wavelength();
    require(std::isfinite(lambda) && lambda > 0.0, "wavelength must be finite and positive");
    require(std::isfinite(lambda_g) && lambda_g > 0.0, "guided wavelength must be finite and positive");
}

double SystemConfig::path_loss_factor() const
{
    const double r = wavelength() / (4.0 * std::numbers::pi);
    return r * r;
}

double SystemConfig::snr_scale() const
{
    return tx_power * path_loss_factor() / noise_power;
}

SystemConfig reference_config(std::size_t n_antennas, std::size_t n_users)
{
    SystemConfig c;
    c.n_antennas = n_antennas;
    c.n_users = n_users;
    c.room_side = 50.0;
    c.height = 3.0;
    c.carrier_freq = 28e9;
    c.refractive_index = 1.4;
    c.tx_power = dbm_to_watts(10.0);
    c.noise_power = dbm_to_watts(-90.0);
    c.phase_bins = 4;
    c.feed_x = -c.room_side / 2.0;
    return c;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

double distance(const Point3& a, const Point3& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<Point3> pa_positions(const SystemConfig& config)
{
    const double L = config.room_side;
    const auto N = static_cast<double>(config.n_antennas);
    std::vector<Point3> out;
    out.reserve(config.n_antennas);
    for (std::size_t n = 1; n <= config.n_antennas; ++n) {
        const double x = -L / 2.0 + (2.0 * static_cast<double>(n) - 1.0) * L / (2.0 * N);
        out.push_back({x, 0.0, config.height});
    }
    return out;
}

Point3 feed_point(const SystemConfig& config)
{
    return {config.feed_x, 0.0, config.height};
}

cplx free_space_gain(const Point3& user, const Point3& pa, double wavelength)
{
    const double d = distance(user, pa);
    if (!(d > 0.0))
        throw std::invalid_argument("free_space_gain: user and antenna coincide");
    return std::polar(1.0 / d, -2.0 * std::numbers::pi * d / wavelength);
}

cplx waveguide_phase(const Point3& pa, const Point3& feed, double guided_wavelength)
{
    if (!(guided_wavelength > 0.0))
        throw std::invalid_argument("waveguide_phase: guided wavelength must be positive");
    return std::polar(1.0, -2.0 * std::numbers::pi * distance(pa, feed) / guided_wavelength);
}

ChannelMatrix::ChannelMatrix(std::size_t n_users, std::size_t n_antennas, std::vector<cplx> gains,
                             std::optional<SystemConfig> config)
    : n_users_(n_users), n_antennas_(n_antennas), gains_(std::move(gains)), config_(std::move(config))
{
    if (n_users_ == 0 || n_antennas_ == 0)
        throw std::invalid_argument("ChannelMatrix: empty dimensions");
    if (gains_.size() != n_users_ * n_antennas_)
        throw std::invalid_argument("ChannelMatrix: gain count does not match dimensions");
    for (const auto& g : gains_) {
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw std::invalid_argument("ChannelMatrix: non-finite gain");
        if (g == cplx{0.0, 0.0})
            throw std::invalid_argument("ChannelMatrix: zero gain");
    }
}

ChannelMatrix ChannelMatrix::from_rows(const std::vector<std::vector<cplx>>& rows)
{
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("ChannelMatrix: empty rows");
    const std::size_t n = rows.front().size();
    std::vector<cplx> flat;
    flat.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n)
            throw std::invalid_argument("ChannelMatrix: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ChannelMatrix(rows.size(), n, std::move(flat));
}

ChannelMatrix build_channel_matrix(const SystemConfig& config, const UserPlacement& users)
{
    config.validate();
    if (users.positions.size() != config.n_users)
        throw std::invalid_argument("build_channel_matrix: placement size does not match n_users");

    const auto pas = pa_positions(config);
    const Point3 feed = feed_point(config);
    const double lambda = config.wavelength();
    const double lambda_g = config.guided_wavelength();

    std::vector<cplx> waveguide(pas.size());
    for (std::size_t n = 0; n < pas.size(); ++n)
        waveguide[n] = waveguide_phase(pas[n], feed, lambda_g);

    std::vector<cplx> gains;
    gains.reserve(config.n_users * config.n_antennas);
    for (const auto& user : users.positions)
        for (std::size_t n = 0; n < pas.size(); ++n)
            gains.push_back(free_space_gain(user, pas[n], lambda) * waveguide[n]);

    return ChannelMatrix(config.n_users, config.n_antennas, std::move(gains), config);
}

UserPlacement sample_users(std::uint64_t seed, const SystemConfig& config)
{
    std::mt19937_64 rng(seed);
    const double half = config.room_side / 2.0;
    std::uniform_real_distribution<double> coord(-half, half);
    UserPlacement out;
    out.positions.reserve(config.n_users);
    for (std::size_t m = 0; m < config.n_users; ++m) {
        const double x = coord(rng);
        const double y = coord(rng);
        out.positions.push_back({x, y, 0.0});
    }
    return out;
}

} // namespace pavss
