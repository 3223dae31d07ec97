#ifndef PAVSS_CHANNEL_HPP
#define PAVSS_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pavss {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;

/**
 * Physical and algorithmic parameters of one pinching-antenna deployment.
 *
 * A single waveguide of length room_side runs parallel to the x-axis at
 * height `height`, centred on y = 0. Powers are stored in watts; dBm
 * conversion happens at the CLI boundary.
 */
struct SystemConfig {
    std::size_t n_antennas = 10;
    std::size_t n_users = 1;
    double room_side = 50.0;
    double height = 3.0;
    double carrier_freq = 28e9;
    double refractive_index = 1.4;
    double tx_power = 1e-2;
    double noise_power = 1e-12;
    std::size_t phase_bins = 4;
    double feed_x = -25.0;

    /// Throws std::invalid_argument if any field violates its range.
    void validate() const;

    double wavelength() const { return kSpeedOfLight / carrier_freq; }
    double guided_wavelength() const { return wavelength() / refractive_index; }

    /// Free-space path-loss factor (lambda / 4 pi)^2 = c^2 / (16 pi^2 f_c^2).
    double path_loss_factor() const;

    /// P * eta / sigma^2: converts the scale-free metric into an SNR.
    double snr_scale() const;

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Defaults used in the published experiments (L = 50 m, H = 3 m, 28 GHz,
/// n_eff = 1.4, -90 dBm noise, Q = 4), with P = 10 dBm and the feed at -L/2.
SystemConfig reference_config(std::size_t n_antennas, std::size_t n_users);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

double distance(const Point3& a, const Point3& b);

struct UserPlacement {
    std::vector<Point3> positions;
};

/// Uniformly spaced pinch locations: x_n = -L/2 + (2n - 1) L / (2N), 1-indexed.
std::vector<Point3> pa_positions(const SystemConfig& config);

/// Location where the guided signal enters the waveguide.
Point3 feed_point(const SystemConfig& config);

/// exp(-j 2 pi d / lambda) / d. Throws std::invalid_argument when d == 0.
cplx free_space_gain(const Point3& user, const Point3& pa, double wavelength);

/// exp(-j 2 pi |pa - feed| / lambda_g); unit modulus.
cplx waveguide_phase(const Point3& pa, const Point3& feed, double guided_wavelength);

/**
 * Effective complex gains B (users x antennas), row-major.
 *
 * Every entry must be finite and nonzero. Matrices built from a geometry
 * carry the generating config; synthetic matrices (tests, external callers)
 * have no config attached.
 */
class ChannelMatrix {
public:
    ChannelMatrix(std::size_t n_users, std::size_t n_antennas, std::vector<cplx> gains,
                  std::optional<SystemConfig> config = std::nullopt);

    /// Build from nested rows, one per user.
    static ChannelMatrix from_rows(const std::vector<std::vector<cplx>>& rows);

    std::size_t n_users() const { return n_users_; }
    std::size_t n_antennas() const { return n_antennas_; }

    const cplx& operator()(std::size_t user, std::size_t antenna) const {
        return gains_[user * n_antennas_ + antenna];
    }

    std::span<const cplx> row(std::size_t user) const {
        return {gains_.data() + user * n_antennas_, n_antennas_};
    }

    std::span<const cplx> gains() const { return gains_; }

    const std::optional<SystemConfig>& config_snapshot() const { return config_; }

private:
    std::size_t n_users_;
    std::size_t n_antennas_;
    std::vector<cplx> gains_;
    std::optional<SystemConfig> config_;
};

/// B[m][n] = free_space_gain(user m, pa n) * waveguide_phase(pa n, feed).
ChannelMatrix build_channel_matrix(const SystemConfig& config, const UserPlacement& users);

/// M users, each coordinate uniform on [-L/2, L/2], z = 0. Deterministic in seed.
UserPlacement sample_users(std::uint64_t seed, const SystemConfig& config);

} // namespace pavss

#endif // PAVSS_CHANNEL_HPP
