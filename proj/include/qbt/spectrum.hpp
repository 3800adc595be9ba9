#ifndef QBT_SPECTRUM_HPP
#define QBT_SPECTRUM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbt/parallel.hpp"
#include "qbt/types.hpp"

namespace qbt {

/// Nonincreasing sequence of singular values with a numerical noise floor.
struct SingularSpectrum {
    std::vector<double> values;          // descending, >= 0
    double floor = 0.0;                  // default 1e-12 * s_1

    static SingularSpectrum from(std::vector<double> values);
    void validate() const;
    std::size_t count_above_floor() const;
};

/// Window of 1-based indices used for a tail fit.
struct FitWindow {
    std::size_t k_min = 6;               // drop the first 5 preasymptotic values
    std::size_t k_max = 0;               // 0: everything above the floor
};

/// Least-squares fit of log s_k = intercept - exponent * log k.
struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    std::size_t k_min = 0, k_max = 0;
    double stderr_exponent = 0.0;
};

DecayFit fit_decay(const SingularSpectrum& s, FitWindow window = {});

struct SchattenSum {
    double partial_sum = 0.0;
    std::string verdict;                 // "convergent" | "divergent" | "inconclusive"
    double tail_exponent = 0.0;          // local decay exponent of the tail
};

/// Partial sum of s_k^p with a ratio/tail convergence heuristic.
SchattenSum schatten_sum(const SingularSpectrum& s, double p);

struct ProductLawReport {
    bool inequality_ok = true;           // s_{2n-1}(AB) <= s_n(A) s_n(B), all n, all trials
    double worst_margin = 0.0;           // max of s_{2n-1}(AB) - s_n s_n (should be <= 0)
    double min_fitted_exponent = 0.0;    // over trials
    int trials = 0;
};

/// Random A, B with prescribed power-law singular values k^{-r}, k^{-s}
/// (Haar-like unitary factors); checks the multiplicative singular value
/// inequality and that the product's fitted decay reaches r + s - 0.3.
ProductLawReport product_law_test(double r, double s, int n_trials, int dim,
                                  std::uint64_t seed, Exec exec = Exec::parallel);

/// Sorted multiplier sequence (1 + k^2)^{-t/2} over Fourier modes |k| <= K,
/// the circle model of a Sobolev embedding of order t.
SingularSpectrum sobolev_embedding_svals(double t_order, int modes);

struct LambdaIndependence {
    DecayFit fit1, fit2;
    double exponent_difference = 0.0;
};

/// Decay-exponent comparison for spectra of the same operator pair at two
/// spectral points.
LambdaIndependence lambda_independence_test(const SingularSpectrum& s1,
                                            const SingularSpectrum& s2,
                                            FitWindow window = {});

/// Merge per-mode singular values (mode 0 once, modes +-k twice) and sort.
SingularSpectrum merge_mode_spectrum(const std::vector<double>& per_mode_k0_up);

} // namespace qbt

#endif
