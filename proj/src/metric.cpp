#include "pavss/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pavss {

ActivationVector::ActivationVector(std::size_t n_antennas) : mask_(n_antennas, 0) {}

ActivationVector::ActivationVector(std::vector<std::uint8_t> mask) : mask_(std::move(mask))
{
    for (auto& bit : mask_) {
        if (bit > 1)
            throw std::invalid_argument("ActivationVector: mask entries must be 0 or 1");
        active_ += bit;
    }
}

ActivationVector ActivationVector::singleton(std::size_t n_antennas, std::size_t index)
{
    ActivationVector a(n_antennas);
    a.activate(index);
    return a;
}

ActivationVector ActivationVector::from_bits(std::uint64_t bits, std::size_t n_antennas)
{
    if (n_antennas > 64)
        throw std::invalid_argument("ActivationVector::from_bits: more than 64 antennas");
    ActivationVector a(n_antennas);
    for (std::size_t n = 0; n < n_antennas; ++n)
        if ((bits >> n) & 1U)
            a.activate(n);
    return a;
}

void ActivationVector::activate(std::size_t n)
{
    if (n >= mask_.size())
        throw std::out_of_range("ActivationVector::activate: index out of range");
    if (!mask_[n]) {
        mask_[n] = 1;
        ++active_;
    }
}

void ActivationVector::deactivate(std::size_t n)
{
    if (n >= mask_.size())
        throw std::out_of_range("ActivationVector::deactivate: index out of range");
    if (mask_[n]) {
        mask_[n] = 0;
        --active_;
    }
}

ActivationVector ActivationVector::with(std::size_t n) const
{
    ActivationVector out = *this;
    out.activate(n);
    return out;
}

std::vector<std::size_t> ActivationVector::active_indices() const
{
    std::vector<std::size_t> out;
    out.reserve(active_);
    for (std::size_t n = 0; n < mask_.size(); ++n)
        if (mask_[n])
            out.push_back(n);
    return out;
}

std::string ActivationVector::to_string() const
{
    std::string s(mask_.size(), '0');
    for (std::size_t n = 0; n < mask_.size(); ++n)
        if (mask_[n])
            s[n] = '1';
    return s;
}

std::vector<cplx> accumulated_signal(const ChannelMatrix& B, const ActivationVector& a)
{
    if (a.size() != B.n_antennas())
        throw std::invalid_argument("accumulated_signal: activation length does not match antenna count");
    if (a.empty())
        throw std::invalid_argument("accumulated_signal: empty activation");

    std::vector<cplx> z(B.n_users(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < B.n_users(); ++m) {
        const auto row = B.row(m);
        for (std::size_t n = 0; n < row.size(); ++n)
            if (a[n])
                z[m] += row[n];
    }
    return z;
}

double metric_from_accumulated(std::span<const cplx> accumulated, std::size_t active_count)
{
    if (active_count == 0)
        throw std::invalid_argument("metric_from_accumulated: empty activation");
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& z : accumulated)
        worst = std::min(worst, z.real() * z.real() + z.imag() * z.imag());
    return worst / static_cast<double>(active_count);
}

double maxmin_metric(const ChannelMatrix& B, const ActivationVector& a)
{
    const auto z = accumulated_signal(B, a);
    return metric_from_accumulated(z, a.active_count());
}

double rate_from_metric(const SystemConfig& config, double metric)
{
    return std::log2(1.0 + config.snr_scale() * metric);
}

MetricReport rate_report(const SystemConfig& config, const ChannelMatrix& B, const ActivationVector& a)
{
    MetricReport r;
    r.accumulated = accumulated_signal(B, a);
    r.metric = metric_from_accumulated(r.accumulated, a.active_count());

    const double scale = config.snr_scale() / static_cast<double>(a.active_count());
    r.per_user_snr.reserve(r.accumulated.size());
    r.per_user_rate.reserve(r.accumulated.size());
    r.min_rate = std::numeric_limits<double>::infinity();
    for (const auto& z : r.accumulated) {
        const double snr = scale * std::norm(z);
        const double rate = std::log2(1.0 + snr);
        r.per_user_snr.push_back(snr);
        r.per_user_rate.push_back(rate);
        r.min_rate = std::min(r.min_rate, rate);
    }
    return r;
}

} // namespace pavss
