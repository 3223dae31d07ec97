#ifndef PAVSS_METRIC_HPP
#define PAVSS_METRIC_HPP

#include "pavss/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pavss {

/// Binary mask over the N pinches; caches the number of active entries.
class ActivationVector {
public:
    ActivationVector() = default;
    explicit ActivationVector(std::size_t n_antennas);
    explicit ActivationVector(std::vector<std::uint8_t> mask);

    static ActivationVector singleton(std::size_t n_antennas, std::size_t index);
    /// Bit n of `bits` activates antenna n (0-based). Requires n_antennas <= 64.
    static ActivationVector from_bits(std::uint64_t bits, std::size_t n_antennas);

    std::size_t size() const { return mask_.size(); }
    std::size_t active_count() const { return active_; }
    bool empty() const { return active_ == 0; }
    bool operator[](std::size_t n) const { return mask_[n] != 0; }

    void activate(std::size_t n);
    void deactivate(std::size_t n);
    ActivationVector with(std::size_t n) const;

    std::vector<std::size_t> active_indices() const;
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    /// "0110..." with antenna 1 first.
    std::string to_string() const;

    friend bool operator==(const ActivationVector&, const ActivationVector&) = default;

private:
    std::vector<std::uint8_t> mask_;
    std::size_t active_ = 0;
};

struct MetricReport {
    std::vector<cplx> accumulated;
    double metric = 0.0;
    std::vector<double> per_user_snr;
    std::vector<double> per_user_rate;
    double min_rate = 0.0;
};

/// Z_m = sum of B[m][n] over active n. Throws on length mismatch or empty a.
std::vector<cplx> accumulated_signal(const ChannelMatrix& B, const ActivationVector& a);

/// min_m |Z_m|^2 / active_count, computed from an existing accumulated vector.
double metric_from_accumulated(std::span<const cplx> accumulated, std::size_t active_count);

/// Worst-user scale-free metric min_m |a^T B_m|^2 / ||a||_0.
double maxmin_metric(const ChannelMatrix& B, const ActivationVector& a);

/// Attaches SNRs and rates to an activation using the config's P, eta and sigma^2.
MetricReport rate_report(const SystemConfig& config, const ChannelMatrix& B, const ActivationVector& a);

/// log2(1 + snr_scale * metric); the rate of the worst user.
double rate_from_metric(const SystemConfig& config, double metric);

} // namespace pavss

#endif // PAVSS_METRIC_HPP
