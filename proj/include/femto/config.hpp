#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "femto/channel.hpp"
#include "femto/deployment.hpp"
#include "femto/schemes.hpp"

namespace femto {

enum class CountMode {
    Fixed,    // exactly `count` femtocells besides the reference one
    Poisson,  // Poisson(count) per trial
};

enum class McMode {
    Full,        // placement, plan and fading redrawn every trial
    FadingOnly,  // placement and plan fixed per sweep cell
};

/// Every knob of a sweep. Defaults are the reference parameter set.
struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::vector<SchemeKind> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    std::vector<int> counts{100, 500, 1000, 2000};
    CountMode count_mode = CountMode::Fixed;
    McMode mc_mode = McMode::Full;
    std::size_t trials = 10000;
    unsigned threads = 0;  // 0: all hardware threads

    double band_width_mhz = 30.0;
    double macro_radius = 1000.0;
    double femto_radius = 10.0;
    double inner_radius_fraction = 0.5;
    double reference_fap_distance = 200.0;
    double ue_distance = 5.0;
    double carrier_mhz = 900.0;
    double macro_tx_power = 1500.0;
    double fap_tx_power_max = 0.01;
    double bs_height = 50.0;
    double fap_height = 2.0;
    double gamma_db = 9.0;
    double neighbor_threshold = 60.0;
    int walls_between_femtocells = 1;
    double dedicated_femto_fraction = 0.333;
    double subband_fraction = 0.333;
    std::array<int, 6> tier_bands = kDefaultTierBands;

    double eta1 = 2.0;
    double eta2 = 3.0;
    double eta3 = 3.5;
    double shadow_sigma_femto = 4.0;
    double shadow_sigma_macro = 8.0;
    double wall_loss_db = 10.0;
    std::optional<double> p0_femto;  // free-space gain at 1 m when unset
    std::optional<double> p0_macro;

    StaticAssignment static_assignment = StaticAssignment::Balanced;
    double shrink_factor = 0.8;
    double min_femto_radius = 4.0;

    int dense_threshold = 1000;
    double se_cap = 10.0;

    ChannelParams channel() const;
    FemtoLayout layout() const;
    SonConfig son() const;
    Band total_band() const;

    /// Throws ConfigError naming the first offending key.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    /// Keeps `key` for callers but uses `what` verbatim.
    ConfigError(std::string key, const std::string& what, std::nullptr_t)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Flat `key = value` text, one pair per line, '#' starts a comment.
ScenarioConfig parse_config(std::string_view text, const std::string& source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies one key to `config`; used by the parser and by command-line overrides.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Every key with its value, in a form parse_config reads back to an equal config.
std::string format_config(const ScenarioConfig& config);

std::vector<std::string> config_keys();

}  // namespace femto
