#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "femto/analysis.hpp"
#include "femto/config.hpp"

namespace femto {

/// One (scheme, femtocell count) cell of a density sweep.
struct SweepRow {
    SchemeKind scheme = SchemeKind::Shared;
    int femtocell_count = 0;
    double outage_probability = 0.0;
    double ci_half_width = 0.0;
    double mean_throughput_bps = 0.0;
    double aggregate_throughput_bps = 0.0;  // mean per-UE throughput times femtocell count
    double same_band_neighbor_fraction = 0.0;
    std::uint64_t seed = 0;  // cell seed; the row depends on nothing else

    // not part of the CSV
    double throughput_half_width = 0.0;
    double conditional_outage = 0.0;
    std::size_t trials = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // scheme order of kAllSchemes, then ascending count
};

std::uint64_t cell_seed(std::uint64_t base, SchemeKind scheme, int count) noexcept;

/// Placement plus frequency plan for one realization of the scenario.
struct Scenario {
    Deployment deployment;
    AllocationPlan plan;
};

/// Draws `femtocells` FAPs besides the reference one, places the reference UE and
/// allocates the spectrum. Only the reference FAP's neighbor list is built when
/// the scheme does not look at the graph.
Scenario build_scenario(const ScenarioConfig& config, SchemeKind scheme, int femtocells, Rng& rng);

AllocationPlan allocate(const ScenarioConfig& config, SchemeKind scheme, Deployment& deployment);

SweepRow run_cell(const ScenarioConfig& config, SchemeKind scheme, int count);
SweepResult run_sweep(const ScenarioConfig& config);

inline constexpr const char* kCsvHeader =
    "scheme,femtocell_count,outage_probability,ci_half_width,mean_throughput_bps,aggregate_throughput_bps,"
    "same_band_neighbor_fraction,seed";

/// 6 significant digits, '.' separator, independent of the global locale.
std::string format_number(double x);

std::string format_csv(const SweepResult& result);
/// Throws std::runtime_error when the file cannot be written or the result is empty.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

/// Recommended scheme for a femtocell count: static reuse up to the dense
/// threshold, dynamic reuse above it.
SchemeKind recommended_scheme(int count, int dense_threshold) noexcept;

std::string emit_summary(const SweepResult& result, int dense_threshold);

}  // namespace femto
