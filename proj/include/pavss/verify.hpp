#ifndef PAVSS_VERIFY_HPP
#define PAVSS_VERIFY_HPP

#include "pavss/trellis.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pavss::verify {

/// Numbered acceptance checks. Trial counts, seeds and tolerances are fixed
/// here; `quick` shrinks the larger batches but keeps every threshold. The
/// two oracle batches always run at full size since their thresholds are
/// fractions of the batch.
enum class Criterion {
    oracle_single_user = 1,
    oracle_multi_user = 2,
    complexity_bound = 3,
    baseline_dominance = 4,
    convergence_shape = 5,
    rate_vs_n_trend = 6,
    invariant_suite = 7,
    single_bin_degeneracy = 8,
};

struct CriterionResult {
    Criterion id;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    bool quick = false;
    std::uint64_t seed = 7;
    /// Quantizer under test; empty means quantize_phase. Lets callers check
    /// that a broken quantizer is caught.
    PhaseQuantizer quantizer;
};

/// Every criterion, in order.
std::vector<Criterion> all_criteria();

/// Oracle equivalence, complexity and invariant checks (1, 2, 3, 7, 8).
std::vector<Criterion> oracle_and_invariant_criteria();

CriterionResult run_criterion(Criterion c, const Options& options);

std::vector<CriterionResult> run(const std::vector<Criterion>& criteria, const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] C1 oracle equivalence, single user: ..." style line.
std::string format_line(const CriterionResult& r);

/// Off-by-one-bin quantizer for negative tests.
std::size_t faulty_quantizer(double phi, std::size_t q_bins);

} // namespace pavss::verify

#endif // PAVSS_VERIFY_HPP
