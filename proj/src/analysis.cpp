#include "femto/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "femto/parallel.hpp"

namespace femto {

double db_from_linear(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("db_from_linear: input must be positive, got " + std::to_string(x));
    return 10.0 * std::log10(x);
}

double linear_from_db(double db) noexcept { return std::pow(10.0, db / 10.0); }

LinkBudget link_budget(const Deployment& deployment, const AllocationPlan& plan, const ChannelParams& params,
                       int walls_between_femtocells) {
    if (deployment.faps.empty()) throw std::invalid_argument("link_budget: deployment has no reference FAP");
    if (!plan.has_fap(0)) throw std::invalid_argument("link_budget: reference FAP has no assignment");
    const FapSite& ref = deployment.faps.front();
    const Point ue = deployment.reference_ue;

    LinkBudget b;
    b.ue_in_center = deployment.ue_distance < ref.inner_radius;
    b.s_bar = ref.tx_power_w * mean_path_gain(LinkClass::FemtoOwn, deployment.ue_distance, 0, params);
    b.bandwidth_hz = static_cast<double>(serving_band(plan, 0, b.ue_in_center).width()) * 1e3;

    if (deployment.neighbors.size() > 0) {
        const auto& nbrs = deployment.neighbors.neighbors(0);
        b.k_neighbors = static_cast<int>(nbrs.size());
        for (int i : nbrs) {
            if (indicator_x(plan, i, 0, b.ue_in_center) == 0) continue;
            const FapSite& f = deployment.faps.at(static_cast<std::size_t>(i));
            const int walls = ue_wall_count(0, i, walls_between_femtocells);
            b.femto_ids.push_back(i);
            b.femto_mean_w.push_back(f.tx_power_w *
                                     mean_path_gain(LinkClass::FemtoCross, distance(f.position, ue), walls, params));
        }
    }
    for (const auto& m : deployment.macrocells) {
        if (indicator_y(plan, m.id, 0, b.ue_in_center) == 0) continue;
        const double d = macro_link_distance(distance(m.center, ue), params);
        b.macro_ids.push_back(m.id);
        b.macro_mean_w.push_back(m.tx_power_w * mean_path_gain(LinkClass::MacroDown, d, 0, params));
    }
    return b;
}

RealizationSet draw_realizations(const LinkBudget& budget, const ChannelParams& params, std::size_t fap_count,
                                 std::size_t macro_count, Rng& rng) {
    RealizationSet r;
    r.femto.resize(fap_count);
    r.macro.resize(macro_count);
    for (int i : budget.femto_ids) r.femto.at(static_cast<std::size_t>(i)) = sample_link(LinkClass::FemtoCross, params, rng);
    for (int j : budget.macro_ids) r.macro.at(static_cast<std::size_t>(j)) = sample_link(LinkClass::MacroDown, params, rng);
    return r;
}

namespace {

LinkRealization lookup(const std::vector<LinkRealization>& v, int id) {
    const auto k = static_cast<std::size_t>(id);
    return k < v.size() ? v[k] : LinkRealization{};
}

}  // namespace

InterferenceBreakdown realize(const LinkBudget& budget, const RealizationSet& realizations) {
    InterferenceBreakdown out;
    out.s_bar = budget.s_bar;
    for (std::size_t k = 0; k < budget.femto_ids.size(); ++k) {
        const LinkRealization r = lookup(realizations.femto, budget.femto_ids[k]);
        out.i_f += budget.femto_mean_w[k] * r.xi * r.z;
    }
    for (std::size_t k = 0; k < budget.macro_ids.size(); ++k) {
        const LinkRealization r = lookup(realizations.macro, budget.macro_ids[k]);
        out.i_m += budget.macro_mean_w[k] * r.xi * r.z;
    }
    out.k_active = static_cast<int>(budget.femto_ids.size());
    out.n_active = static_cast<int>(budget.macro_ids.size());
    return out;
}

InterferenceBreakdown interference_breakdown(const Deployment& deployment, const AllocationPlan& plan,
                                             const ChannelParams& params, const RealizationSet& realizations,
                                             int walls_between_femtocells) {
    return realize(link_budget(deployment, plan, params, walls_between_femtocells), realizations);
}

SirSample sir(const InterferenceBreakdown& b, double z0) noexcept {
    const double interference = b.total_interference();
    if (!(interference > 0.0)) return {};
    return {b.s_bar * z0 / interference, false};
}

double outage_conditional(const InterferenceBreakdown& b, const SirThreshold& gamma) {
    if (!(b.s_bar > 0.0)) throw std::invalid_argument("outage_conditional: s_bar must be positive");
    return -std::expm1(-gamma.gamma_linear * b.total_interference() / b.s_bar);
}

double wald_half_width(double p, std::size_t n) noexcept {
    if (n == 0) return 0.0;
    return 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

OutageEstimate outage_signal_fading(const InterferenceBreakdown& b, const SirThreshold& gamma, std::size_t trials,
                                    Rng& rng) {
    if (trials == 0) throw std::invalid_argument("outage_signal_fading: trials must be >= 1");
    OutageEstimate est;
    est.trials = trials;
    est.conditional_mean = outage_conditional(b, gamma);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const SirSample s = sir(b, sample_fast_fading(rng));
        if (!s.interference_free && s.value < gamma.gamma_linear) ++hits;
    }
    est.probability = static_cast<double>(hits) / static_cast<double>(trials);
    est.half_width_95 = wald_half_width(est.probability, trials);
    return est;
}

double capacity_bps(const SirSample& s, double bandwidth_hz, double se_cap) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("throughput: bandwidth must be positive");
    if (s.interference_free) return bandwidth_hz * se_cap;
    return bandwidth_hz * std::log2(1.0 + s.value);
}

ThroughputEstimate throughput(std::span<const SirSample> samples, double bandwidth_hz, double se_cap) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("throughput: bandwidth must be positive");
    ThroughputEstimate est;
    est.bandwidth_hz = bandwidth_hz;
    est.samples = samples.size();
    if (samples.empty()) return est;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : samples) {
        const double c = capacity_bps(s, bandwidth_hz, se_cap);
        sum += c;
        sum_sq += c * c;
    }
    const double n = static_cast<double>(samples.size());
    est.mean_bps = sum / n;
    if (samples.size() > 1) {
        const double var = std::max(0.0, (sum_sq - n * est.mean_bps * est.mean_bps) / (n - 1.0));
        est.half_width_95 = 1.959963984540054 * std::sqrt(var / n);
    }
    return est;
}

TrialOutcome fading_trial(const LinkBudget& budget, const ChannelParams& params, const SirThreshold& gamma,
                          std::size_t fap_count, std::size_t macro_count, Rng& rng) {
    const RealizationSet r = draw_realizations(budget, params, fap_count, macro_count, rng);
    const InterferenceBreakdown b = realize(budget, r);
    TrialOutcome out;
    out.sir = sir(b, sample_fast_fading(rng));
    out.conditional_outage = outage_conditional(b, gamma);
    out.bandwidth_hz = budget.bandwidth_hz;
    out.neighbors = budget.k_neighbors;
    out.same_band = b.k_active;
    return out;
}

double MonteCarloSummary::same_band_fraction() const noexcept {
    if (neighbor_links == 0) return std::nan("");
    return static_cast<double>(same_band_links) / static_cast<double>(neighbor_links);
}

MonteCarloSummary summarize(std::span<const TrialOutcome> trials, const SirThreshold& gamma, double se_cap) {
    if (trials.empty()) throw std::invalid_argument("summarize: no trials");
    MonteCarloSummary s;
    const double n = static_cast<double>(trials.size());
    std::size_t hits = 0;
    double cond = 0.0, sum = 0.0, sum_sq = 0.0, width = 0.0;
    for (const auto& t : trials) {
        if (!t.sir.interference_free && t.sir.value < gamma.gamma_linear) ++hits;
        cond += t.conditional_outage;
        // bandwidth may differ per trial when placement is redrawn
        const double c = capacity_bps(t.sir, t.bandwidth_hz, se_cap);
        sum += c;
        sum_sq += c * c;
        width += t.bandwidth_hz;
        s.neighbor_links += static_cast<std::size_t>(t.neighbors);
        s.same_band_links += static_cast<std::size_t>(t.same_band);
    }
    s.outage.trials = trials.size();
    s.outage.probability = static_cast<double>(hits) / n;
    s.outage.half_width_95 = wald_half_width(s.outage.probability, trials.size());
    s.outage.conditional_mean = cond / n;

    s.throughput.samples = trials.size();
    s.throughput.bandwidth_hz = width / n;
    s.throughput.mean_bps = sum / n;
    if (trials.size() > 1) {
        const double var = std::max(0.0, (sum_sq - n * s.throughput.mean_bps * s.throughput.mean_bps) / (n - 1.0));
        s.throughput.half_width_95 = 1.959963984540054 * std::sqrt(var / n);
    }
    return s;
}

MonteCarloSummary outage_monte_carlo(const LinkBudget& budget, const ChannelParams& params, const SirThreshold& gamma,
                                     std::size_t trials, std::uint64_t seed, std::size_t fap_count,
                                     std::size_t macro_count, double se_cap, unsigned threads) {
    if (trials == 0) throw std::invalid_argument("outage_monte_carlo: trials must be >= 1");
    const auto outcomes = parallel_map<TrialOutcome>(trials, threads, [&](std::size_t t) {
        Rng rng = trial_stream(seed, t);
        return fading_trial(budget, params, gamma, fap_count, macro_count, rng);
    });
    return summarize(outcomes, gamma, se_cap);
}

}  // namespace femto
