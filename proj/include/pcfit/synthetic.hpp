#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pcfit/errors.hpp"
#include "pcfit/series.hpp"

namespace pcfit {

/// True coefficients of one regime of the generating equation.
struct SegmentTruth {
    double alpha = 0.0;  ///< intercept, fraction-per-year
    double beta = 0.0;   ///< labour-force-change slope
    double gamma = 0.0;  ///< unemployment slope (pi equation only)
};

/**
 * @brief Seeded synthetic-dataset specification.
 *
 * ln LF follows a random walk with drift lf_drift and innovation sd
 * lf_noise_sd. Unemployment and inflation are generated exactly from the
 * segment truths applied to l(t - lag) (gamma multiplies the generated,
 * noisy u at lag 0) plus Gaussian observation noise.
 *
 * RNG: one std::mt19937_64 seeded with `seed`; standard-normal draws are
 * consumed in a fixed order (labour-force innovations, then unemployment
 * noise, then inflation noise, each in ascending year order), so a seed
 * fully determines the output on a given build.
 */
struct SynthSpec {
    std::uint64_t seed = 0;
    int start_year = 1965;
    int end_year = 2012;
    double lf_level0 = 3500.0;  ///< LF level at the pre-window anchor year
    double lf_drift = 0.005;
    double lf_noise_sd = 0.0;
    int lag = 0;  ///< lag of l(t) in both the pi and u equations
    std::optional<int> break_year;
    SegmentTruth pi_pre, pi_post;
    SegmentTruth u_pre, u_post;
    double obs_noise_sd = 0.0;
};

struct SyntheticData {
    AnnualSeries lf;  ///< labour-force level, covers [start - lag - 1, end]
    AnnualSeries pi;  ///< inflation rate, covers [start, end]
    AnnualSeries u;   ///< unemployment rate, covers [start, end]
};

/// Derive a per-trial seed from a master seed (splitmix64 step).
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

[[nodiscard]] inline SyntheticData generate_synthetic(const SynthSpec& spec) {
    if (spec.start_year >= spec.end_year) throw BadSpec("SynthSpec: start_year must precede end_year");
    if (spec.lf_noise_sd < 0 || spec.obs_noise_sd < 0) throw BadSpec("SynthSpec: negative noise sd");
    if (spec.lag < 0) throw BadSpec("SynthSpec: labour-force lag must be >= 0");
    if (spec.lf_level0 <= 0) throw BadSpec("SynthSpec: lf_level0 must be positive");
    if (spec.break_year &&
        (*spec.break_year <= spec.start_year || *spec.break_year >= spec.end_year))
        throw BadSpec("SynthSpec: break_year must lie strictly inside [start_year, end_year]");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> stdnorm(0.0, 1.0);

    const int lf_first = spec.start_year - spec.lag - 1;
    const int n_lf = spec.end_year - lf_first + 1;
    std::vector<double> lf(static_cast<std::size_t>(n_lf));
    double ln_lf = std::log(spec.lf_level0);
    lf[0] = spec.lf_level0;
    for (int i = 1; i < n_lf; ++i) {
        ln_lf += spec.lf_drift + spec.lf_noise_sd * stdnorm(rng);
        lf[static_cast<std::size_t>(i)] = std::exp(ln_lf);
    }
    AnnualSeries lf_series("lf_synth", Unit::level, lf_first, lf);
    const AnnualSeries l = log_change(lf_series);

    const auto seg = [&](int year, const SegmentTruth& pre, const SegmentTruth& post) -> const SegmentTruth& {
        return (spec.break_year && year > *spec.break_year) ? post : pre;
    };

    const int n_obs = spec.end_year - spec.start_year + 1;
    std::vector<double> u(static_cast<std::size_t>(n_obs));
    for (int i = 0; i < n_obs; ++i) {
        const int t = spec.start_year + i;
        const SegmentTruth& c = seg(t, spec.u_pre, spec.u_post);
        u[static_cast<std::size_t>(i)] =
            c.alpha + c.beta * l.at_year(t - spec.lag) + spec.obs_noise_sd * stdnorm(rng);
    }
    std::vector<double> pi(static_cast<std::size_t>(n_obs));
    for (int i = 0; i < n_obs; ++i) {
        const int t = spec.start_year + i;
        const SegmentTruth& c = seg(t, spec.pi_pre, spec.pi_post);
        pi[static_cast<std::size_t>(i)] = c.alpha + c.beta * l.at_year(t - spec.lag) +
                                          c.gamma * u[static_cast<std::size_t>(i)] +
                                          spec.obs_noise_sd * stdnorm(rng);
    }
    return SyntheticData{std::move(lf_series),
                         AnnualSeries("pi_synth", Unit::fraction_per_year, spec.start_year, std::move(pi)),
                         AnnualSeries("u_synth", Unit::fraction_per_year, spec.start_year, std::move(u))};
}

}  // namespace pcfit
