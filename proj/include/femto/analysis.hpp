#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "femto/channel.hpp"
#include "femto/deployment.hpp"
#include "femto/schemes.hpp"

namespace femto {

double db_from_linear(double x);
double linear_from_db(double db) noexcept;

struct SirThreshold {
    double gamma_db = 9.0;
    double gamma_linear = 7.943282347242815;

    static SirThreshold from_db(double db) noexcept { return {db, linear_from_db(db)}; }
};

/// Mean signal and summed interference seen by the reference femto UE.
struct InterferenceBreakdown {
    double s_bar = 0.0;  // serving power with Z0 factored out
    double i_f = 0.0;    // femto interference
    double i_m = 0.0;    // macro interference
    int k_active = 0;    // same-band femto interferers
    int n_active = 0;    // same-band macrocells

    double total_interference() const noexcept { return i_f + i_m; }
};

/// Deterministic part of every link around the reference UE. Only links whose
/// indicator is 1 are kept; each carries p_tx * mean path gain.
struct LinkBudget {
    double s_bar = 0.0;
    bool ue_in_center = false;
    double bandwidth_hz = 0.0;  // width of the band serving the UE
    int k_neighbors = 0;        // every graph neighbor of the reference FAP
    std::vector<int> femto_ids;
    std::vector<double> femto_mean_w;
    std::vector<int> macro_ids;
    std::vector<double> macro_mean_w;
};

LinkBudget link_budget(const Deployment& deployment, const AllocationPlan& plan, const ChannelParams& params,
                       int walls_between_femtocells = 1);

/// Per-link (xi, Z), indexed by FAP id and by macrocell id. Missing links use xi = Z = 1.
struct RealizationSet {
    std::vector<LinkRealization> femto;
    std::vector<LinkRealization> macro;
};

/// Draws realizations for the active links only, femtocells first in id order.
RealizationSet draw_realizations(const LinkBudget& budget, const ChannelParams& params, std::size_t fap_count,
                                 std::size_t macro_count, Rng& rng);

InterferenceBreakdown realize(const LinkBudget& budget, const RealizationSet& realizations);

InterferenceBreakdown interference_breakdown(const Deployment& deployment, const AllocationPlan& plan,
                                             const ChannelParams& params, const RealizationSet& realizations,
                                             int walls_between_femtocells = 1);

/// SIR sample; interference-free links carry no finite value and never drop out.
struct SirSample {
    double value = std::numeric_limits<double>::infinity();
    bool interference_free = true;
};

SirSample sir(const InterferenceBreakdown& b, double z0) noexcept;

/// 1 - exp(-gamma * (I_f + I_m) / S_bar): outage over the exponential Z0 with
/// every interferer realization held fixed. Throws for s_bar <= 0.
double outage_conditional(const InterferenceBreakdown& b, const SirThreshold& gamma);

struct OutageEstimate {
    double probability = 0.0;
    std::size_t trials = 0;
    double half_width_95 = 0.0;    // Wald interval
    double conditional_mean = 0.0;  // average of outage_conditional over the same trials
};

/// Wald 95% half-width of a Bernoulli frequency.
double wald_half_width(double p, std::size_t n) noexcept;

/// Redraws Z0 only, for a fixed breakdown.
OutageEstimate outage_signal_fading(const InterferenceBreakdown& b, const SirThreshold& gamma, std::size_t trials,
                                    Rng& rng);

struct ThroughputEstimate {
    double mean_bps = 0.0;
    double bandwidth_hz = 0.0;
    std::size_t samples = 0;
    double half_width_95 = 0.0;
};

/// W * log2(1 + SIR); interference-free samples get W * se_cap. Throws for W <= 0.
double capacity_bps(const SirSample& s, double bandwidth_hz, double se_cap);

ThroughputEstimate throughput(std::span<const SirSample> samples, double bandwidth_hz, double se_cap = 10.0);

/// Everything one Monte Carlo trial reports.
struct TrialOutcome {
    SirSample sir;
    double conditional_outage = 0.0;
    double bandwidth_hz = 0.0;
    int neighbors = 0;  // K
    int same_band = 0;  // neighbors with X_i = 1
};

/// One fading draw over a fixed budget: interferer realizations, then Z0.
TrialOutcome fading_trial(const LinkBudget& budget, const ChannelParams& params, const SirThreshold& gamma,
                          std::size_t fap_count, std::size_t macro_count, Rng& rng);

struct MonteCarloSummary {
    OutageEstimate outage;
    ThroughputEstimate throughput;
    std::size_t neighbor_links = 0;
    std::size_t same_band_links = 0;

    double same_band_fraction() const noexcept;
};

/// Order-preserving reduction; identical inputs give bitwise identical output.
MonteCarloSummary summarize(std::span<const TrialOutcome> trials, const SirThreshold& gamma, double se_cap);

/// Fading-only Monte Carlo: trial t uses trial_stream(seed, t).
MonteCarloSummary outage_monte_carlo(const LinkBudget& budget, const ChannelParams& params, const SirThreshold& gamma,
                                     std::size_t trials, std::uint64_t seed, std::size_t fap_count,
                                     std::size_t macro_count, double se_cap = 10.0, unsigned threads = 1);

}  // namespace femto
