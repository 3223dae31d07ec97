#ifndef PAVSS_TESTS_ORACLES_HPP
#define PAVSS_TESTS_ORACLES_HPP

// Reference computations that share no code with the library. Each one
// re-derives a quantity straight from its definition.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>; // [user][antenna]

/// exp(-j 2 pi d / lambda) / d via cos/sin.
inline cplx scalar_gain(double d, double wavelength)
{
    const double phase = -2.0 * std::numbers::pi * d / wavelength;
    return {std::cos(phase) / d, std::sin(phase) / d};
}

/// min_m |sum_n a_n B_mn|^2 / sum_n a_n, term by term.
inline double worst_user_objective(const Matrix& B, const std::vector<int>& a)
{
    int count = 0;
    for (int bit : a)
        count += bit;
    double worst = INFINITY;
    for (const auto& row : B) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < row.size(); ++n) {
            if (a[n]) {
                re += row[n].real();
                im += row[n].imag();
            }
        }
        worst = std::min(worst, re * re + im * im);
    }
    return worst / count;
}

/// Maximum of worst_user_objective over every non-empty subset.
inline double exhaustive_optimum(const Matrix& B)
{
    const std::size_t n = B.front().size();
    double best = -1.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> a(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = static_cast<int>((mask >> i) & 1U);
        best = std::max(best, worst_user_objective(B, a));
    }
    return best;
}

/// Bin by scanning the interval list [-pi + 2 pi k / Q, -pi + 2 pi (k+1) / Q).
inline std::size_t interval_bin(double phi, std::size_t q_bins)
{
    const double two_pi = 2.0 * std::numbers::pi;
    double w = phi;
    while (w >= std::numbers::pi)
        w -= two_pi;
    while (w < -std::numbers::pi)
        w += two_pi;
    for (std::size_t k = 0; k < q_bins; ++k) {
        const double lo = -std::numbers::pi + two_pi * static_cast<double>(k) / static_cast<double>(q_bins);
        const double hi = k + 1 == q_bins
                              ? std::numbers::pi
                              : -std::numbers::pi + two_pi * static_cast<double>(k + 1) / static_cast<double>(q_bins);
        if (w >= lo && w < hi)
            return k;
    }
    return q_bins;
}

} // namespace oracle

#endif
