#ifndef PAVSS_BASELINES_HPP
#define PAVSS_BASELINES_HPP

#include "pavss/channel.hpp"
#include "pavss/metric.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace pavss {

struct SolverResult {
    ActivationVector activation;
    double metric = 0.0;
    std::uint64_t evaluations = 0;
    std::string solver_name;
};

inline constexpr std::size_t kDefaultBruteForceCap = 22;

enum class EnumerationMode {
    gray_code, ///< one complex add/subtract per subset
    naive,     ///< recompute every subset from scratch (validation only)
};

/**
 * Exhaustive search over all 2^N - 1 non-empty activations.
 *
 * Ties go to the smaller active count, then to the lexicographically smaller
 * mask (antenna 1 compared first). Throws std::invalid_argument when N
 * exceeds `max_antennas`.
 */
SolverResult brute_force_select(const ChannelMatrix& B, std::size_t max_antennas = kDefaultBruteForceCap,
                                EnumerationMode mode = EnumerationMode::gray_code);

/// Best single pinch; lowest index wins ties.
SolverResult best_singleton(const ChannelMatrix& B);

/**
 * Projection-guided greedy activation, adapted to one feedpoint.
 *
 * Starts from the best singleton. Each step scores every inactive pinch n by
 * min_m Re(conj(Z_m / |Z_m|) B[m][n]) and tries the top scorer; it is kept
 * only if the worst-user metric strictly improves, otherwise the search
 * stops. This is a reconstruction of the published baseline, which only
 * fixes the single-trajectory projection idea.
 */
SolverResult greedy_pgga_select(const ChannelMatrix& B);

} // namespace pavss

#endif // PAVSS_BASELINES_HPP
