#include "pavss/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pavss {

namespace {

constexpr std::size_t kNoPick = static_cast<std::size_t>(-1);

// Mask comparison with antenna 1 as the leading symbol: a has a 0 where b
// has a 1 at the first differing position.
bool lexicographically_smaller(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t diff = a ^ b;
    if (diff == 0)
        return false;
    const auto first = static_cast<unsigned>(std::countr_zero(diff));
    return ((a >> first) & 1U) == 0;
}

bool better_subset(double metric, std::uint64_t mask, double best_metric, std::uint64_t best_mask)
{
    if (metric != best_metric)
        return metric > best_metric;
    const int count = std::popcount(mask);
    const int best_count = std::popcount(best_mask);
    if (count != best_count)
        return count < best_count;
    return lexicographically_smaller(mask, best_mask);
}

double naive_metric(const ChannelMatrix& B, std::uint64_t mask)
{
    const std::size_t n_antennas = B.n_antennas();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < B.n_users(); ++m) {
        cplx z{0.0, 0.0};
        for (std::size_t n = 0; n < n_antennas; ++n)
            if ((mask >> n) & 1U)
                z += B(m, n);
        worst = std::min(worst, std::norm(z));
    }
    return worst / std::popcount(mask);
}

} // namespace

SolverResult brute_force_select(const ChannelMatrix& B, std::size_t max_antennas, EnumerationMode mode)
{
    const std::size_t n_antennas = B.n_antennas();
    if (n_antennas > max_antennas || n_antennas > 62)
        throw std::invalid_argument("brute_force_select: N = " + std::to_string(n_antennas) +
                                    " exceeds the enumeration cap of " + std::to_string(max_antennas));

    const std::size_t n_users = B.n_users();
    const std::uint64_t total = (std::uint64_t{1} << n_antennas) - 1;

    double best_metric = -1.0;
    std::uint64_t best_mask = 0;

    if (mode == EnumerationMode::naive) {
        for (std::uint64_t mask = 1; mask <= total; ++mask) {
            const double metric = naive_metric(B, mask);
            if (better_subset(metric, mask, best_metric, best_mask)) {
                best_metric = metric;
                best_mask = mask;
            }
        }
    } else {
        std::vector<cplx> z(n_users, cplx{0.0, 0.0});
        std::uint64_t mask = 0;
        int count = 0;
        for (std::uint64_t i = 1; i <= total; ++i) {
            const auto flip = static_cast<std::size_t>(std::countr_zero(i));
            const std::uint64_t bit = std::uint64_t{1} << flip;
            const bool adding = (mask & bit) == 0;
            mask ^= bit;
            count += adding ? 1 : -1;

            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n_users; ++m) {
                if (adding)
                    z[m] += B(m, flip);
                else
                    z[m] -= B(m, flip);
                worst = std::min(worst, z[m].real() * z[m].real() + z[m].imag() * z[m].imag());
            }
            const double metric = worst / count;
            if (better_subset(metric, mask, best_metric, best_mask)) {
                best_metric = metric;
                best_mask = mask;
            }
        }
    }

    SolverResult r;
    r.activation = ActivationVector::from_bits(best_mask, n_antennas);
    r.metric = maxmin_metric(B, r.activation);
    r.evaluations = total;
    r.solver_name = "brute_force";
    return r;
}

SolverResult best_singleton(const ChannelMatrix& B)
{
    const std::size_t n_antennas = B.n_antennas();
    double best_metric = -1.0;
    std::size_t best_index = 0;
    for (std::size_t n = 0; n < n_antennas; ++n) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < B.n_users(); ++m)
            worst = std::min(worst, std::norm(B(m, n)));
        if (worst > best_metric) {
            best_metric = worst;
            best_index = n;
        }
    }

    SolverResult r;
    r.activation = ActivationVector::singleton(n_antennas, best_index);
    r.metric = maxmin_metric(B, r.activation);
    r.evaluations = n_antennas;
    r.solver_name = "best_singleton";
    return r;
}

SolverResult greedy_pgga_select(const ChannelMatrix& B)
{
    SolverResult r = best_singleton(B);
    r.solver_name = "pgga";

    const std::size_t n_users = B.n_users();
    const std::size_t n_antennas = B.n_antennas();
    std::vector<cplx> z = accumulated_signal(B, r.activation);
    std::vector<cplx> direction(n_users);

    while (r.activation.active_count() < n_antennas) {
        for (std::size_t m = 0; m < n_users; ++m) {
            const double mag = std::abs(z[m]);
            direction[m] = mag > 0.0 ? z[m] / mag : cplx{1.0, 0.0};
        }

        double best_score = -std::numeric_limits<double>::infinity();
        std::size_t pick = kNoPick;
        for (std::size_t n = 0; n < n_antennas; ++n) {
            if (r.activation[n])
                continue;
            double score = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n_users; ++m)
                score = std::min(score, (std::conj(direction[m]) * B(m, n)).real());
            if (score > best_score) {
                best_score = score;
                pick = n;
            }
        }

        std::vector<cplx> trial = z;
        for (std::size_t m = 0; m < n_users; ++m)
            trial[m] += B(m, pick);
        const double metric = metric_from_accumulated(trial, r.activation.active_count() + 1);
        ++r.evaluations;
        if (!(metric > r.metric))
            break;

        r.activation.activate(pick);
        r.metric = metric;
        z = std::move(trial);
    }

    r.metric = maxmin_metric(B, r.activation);
    return r;
}

} // namespace pavss
