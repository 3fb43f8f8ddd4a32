#include "femto/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "femto/parallel.hpp"

namespace femto {

namespace {

bool needs_full_graph(const ScenarioConfig& config, SchemeKind scheme) {
    return scheme == SchemeKind::DynamicReuse ||
           (scheme == SchemeKind::StaticReuse && config.static_assignment == StaticAssignment::Greedy);
}

// Edges of FAP 0 only; enough for the analysis of the reference UE.
NeighborGraph reference_star(std::span<const FapSite> faps, double threshold) {
    NeighborGraph g(faps.size());
    for (std::size_t i = 1; i < faps.size(); ++i) {
        if (distance(faps[0].position, faps[i].position) <= threshold) g.add_edge(0, static_cast<int>(i));
    }
    return g;
}

int draw_count(const ScenarioConfig& config, int count, Rng& rng) {
    if (config.count_mode == CountMode::Poisson) return sample_neighbor_count(static_cast<double>(count), rng);
    return count;
}

std::size_t scheme_order(SchemeKind s) {
    return static_cast<std::size_t>(std::find(kAllSchemes.begin(), kAllSchemes.end(), s) - kAllSchemes.begin());
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, SchemeKind scheme, int count) noexcept {
    return derive_seed(base, static_cast<std::uint64_t>(scheme) + 1, static_cast<std::uint64_t>(count));
}

AllocationPlan allocate(const ScenarioConfig& config, SchemeKind scheme, Deployment& deployment) {
    const Band total = config.total_band();
    switch (scheme) {
        case SchemeKind::Shared: return allocate_shared(total, deployment);
        case SchemeKind::Dedicated: return allocate_dedicated(total, config.dedicated_femto_fraction, deployment);
        case SchemeKind::SubBand: return allocate_subband(total, config.subband_fraction, deployment);
        case SchemeKind::StaticReuse:
            return allocate_static_reuse(total, deployment, deployment.neighbors, config.static_assignment);
        case SchemeKind::DynamicReuse: {
            NeighborGraph graph = deployment.neighbors;
            DynamicReuseEngine engine(std::move(deployment), total, config.son(), std::move(graph));
            engine.install_all();
            AllocationPlan plan = std::move(engine).release_plan();
            // radii may have shrunk; the detection graph in `neighbors` is untouched
            deployment = std::move(engine).release_deployment();
            return plan;
        }
    }
    throw std::invalid_argument("allocate: unknown scheme");
}

Scenario build_scenario(const ScenarioConfig& config, SchemeKind scheme, int femtocells, Rng& rng) {
    Scenario s;
    Deployment& d = s.deployment;
    d.macrocells = build_cluster(config.macro_radius, config.tier_bands, config.macro_tx_power);
    d.faps = place_femtocells(femtocells, config.macro_radius, rng, config.layout());
    d.ue_distance = config.ue_distance;
    d.reference_ue = place_reference_ue(d.faps.front().position, config.ue_distance, rng);
    d.neighbors = needs_full_graph(config, scheme) ? neighbor_graph(d.faps, config.neighbor_threshold)
                                                   : reference_star(d.faps, config.neighbor_threshold);
    s.plan = allocate(config, scheme, d);
    return s;
}

SweepRow run_cell(const ScenarioConfig& config, SchemeKind scheme, int count) {
    const std::uint64_t seed = cell_seed(config.seed, scheme, count);
    const ChannelParams params = config.channel();
    const SirThreshold gamma = SirThreshold::from_db(config.gamma_db);
    const std::size_t macro_count = 7;

    std::vector<TrialOutcome> outcomes;
    if (config.mc_mode == McMode::FadingOnly) {
        Rng rng(derive_seed(seed, ~0ULL));
        const Scenario sc = build_scenario(config, scheme, draw_count(config, count, rng), rng);
        const LinkBudget budget = link_budget(sc.deployment, sc.plan, params, config.walls_between_femtocells);
        const std::size_t faps = sc.deployment.faps.size();
        outcomes = parallel_map<TrialOutcome>(config.trials, config.threads, [&](std::size_t t) {
            Rng r = trial_stream(seed, t);
            return fading_trial(budget, params, gamma, faps, macro_count, r);
        });
    } else {
        outcomes = parallel_map<TrialOutcome>(config.trials, config.threads, [&](std::size_t t) {
            Rng r = trial_stream(seed, t);
            const Scenario sc = build_scenario(config, scheme, draw_count(config, count, r), r);
            const LinkBudget budget = link_budget(sc.deployment, sc.plan, params, config.walls_between_femtocells);
            return fading_trial(budget, params, gamma, sc.deployment.faps.size(), macro_count, r);
        });
    }
    const MonteCarloSummary m = summarize(outcomes, gamma, config.se_cap);

    SweepRow row;
    row.scheme = scheme;
    row.femtocell_count = count;
    row.outage_probability = m.outage.probability;
    row.ci_half_width = m.outage.half_width_95;
    row.mean_throughput_bps = m.throughput.mean_bps;
    row.aggregate_throughput_bps = m.throughput.mean_bps * static_cast<double>(count);
    row.same_band_neighbor_fraction = m.same_band_fraction();
    row.seed = seed;
    row.throughput_half_width = m.throughput.half_width_95;
    row.conditional_outage = m.outage.conditional_mean;
    row.trials = m.outage.trials;
    return row;
}

SweepResult run_sweep(const ScenarioConfig& config) {
    config.validate();
    std::vector<SchemeKind> schemes = config.schemes;
    std::sort(schemes.begin(), schemes.end(), [](SchemeKind a, SchemeKind b) { return scheme_order(a) < scheme_order(b); });
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
    std::vector<int> counts = config.counts;
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

    SweepResult result;
    for (SchemeKind s : schemes) {
        for (int n : counts) {
            try {
                result.rows.push_back(run_cell(config, s, n));
            } catch (const std::exception& e) {
                throw std::runtime_error("cell scheme=" + std::string(scheme_name(s)) + " count=" + std::to_string(n) +
                                         ": " + e.what());
            }
        }
    }
    return result;
}

std::string format_number(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
    return std::string(buf, r.ptr);
}

std::string format_csv(const SweepResult& result) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : result.rows) {
        out += scheme_name(r.scheme);
        out += ',' + std::to_string(r.femtocell_count);
        out += ',' + format_number(r.outage_probability);
        out += ',' + format_number(r.ci_half_width);
        out += ',' + format_number(r.mean_throughput_bps);
        out += ',' + format_number(r.aggregate_throughput_bps);
        out += ',' + format_number(r.same_band_neighbor_fraction);
        out += ',' + std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    if (result.rows.empty()) throw std::runtime_error("emit_csv: empty result");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("emit_csv: cannot write '" + path.string() + "'");
    out << format_csv(result);
    out.flush();
    if (!out) throw std::runtime_error("emit_csv: write failed for '" + path.string() + "'");
}

SchemeKind recommended_scheme(int count, int dense_threshold) noexcept {
    return count > dense_threshold ? SchemeKind::DynamicReuse : SchemeKind::StaticReuse;
}

std::string emit_summary(const SweepResult& result, int dense_threshold) {
    if (result.rows.empty()) throw std::runtime_error("emit_summary: empty result");
    std::map<int, std::vector<const SweepRow*>> by_count;
    for (const auto& r : result.rows) by_count[r.femtocell_count].push_back(&r);

    std::ostringstream out;
    bool sparse_seen = false, dense_seen = false;
    for (const auto& [n, rows] : by_count) (n > dense_threshold ? dense_seen : sparse_seen) = true;
    if (sparse_seen) {
        out << "non-dense (<= " << dense_threshold << " femtocells): recommended "
            << scheme_name(recommended_scheme(dense_threshold, dense_threshold)) << '\n';
    }
    if (dense_seen) {
        out << "dense (> " << dense_threshold << " femtocells): recommended "
            << scheme_name(recommended_scheme(dense_threshold + 1, dense_threshold)) << '\n';
    }
    for (const auto& [n, rows] : by_count) {
        const SweepRow* best_outage = rows.front();
        const SweepRow* best_rate = rows.front();
        for (const SweepRow* r : rows) {
            if (r->outage_probability < best_outage->outage_probability) best_outage = r;
            if (r->aggregate_throughput_bps > best_rate->aggregate_throughput_bps) best_rate = r;
        }
        out << "count " << n << ": recommended " << scheme_name(recommended_scheme(n, dense_threshold))
            << "; lowest outage " << scheme_name(best_outage->scheme) << " ("
            << format_number(best_outage->outage_probability) << "), highest aggregate throughput "
            << scheme_name(best_rate->scheme) << " (" << format_number(best_rate->aggregate_throughput_bps)
            << " bit/s)\n";
    }
    return out.str();
}

}  // namespace femto
