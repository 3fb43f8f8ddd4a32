#pragma once

#include "femto/rng.hpp"

namespace femto {

enum class LinkClass {
    FemtoOwn,    // UE to its serving FAP, indoors, no shadowing
    FemtoCross,  // UE to a neighbor FAP through walls
    MacroDown,   // UE to a macrocell base station
};

/// Log-distance plus wall-loss propagation: gain = P0 * d^-eta * 10^(-walls*wall_loss/10).
struct ChannelParams {
    double p0_femto = 0.0;
    double p0_macro = 0.0;
    double eta1 = 2.0;  // FemtoOwn
    double eta2 = 3.0;  // FemtoCross
    double eta3 = 3.5;  // MacroDown
    double shadow_sigma_femto = 4.0;  // dB
    double shadow_sigma_macro = 8.0;  // dB
    double wall_loss = 10.0;          // dB per wall
    double carrier = 900.0;           // MHz
    double bs_height = 50.0;          // m
    double fap_height = 2.0;          // m

    /// Defaults with both P0 set to the free-space gain at 1 m for `carrier_mhz`.
    static ChannelParams defaults(double carrier_mhz = 900.0);
    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Free-space gain (lambda / (4 pi))^2 at a 1 m reference distance.
double free_space_reference_gain(double carrier_mhz);

struct LinkRealization {
    double xi = 1.0;  // shadowing, linear
    double z = 1.0;   // fast fading power, linear
};

/// Throws std::invalid_argument for d <= 0.
double mean_path_gain(LinkClass cls, double d, int walls, const ChannelParams& params);

/// xi = 10^(G/10), G ~ N(0, sigma_db^2); exactly 1 when sigma_db == 0.
double sample_shadowing(double sigma_db, Rng& rng);
/// Unit-mean exponential (Rayleigh envelope power).
double sample_fast_fading(Rng& rng);

double shadow_sigma_db(LinkClass cls, const ChannelParams& params) noexcept;

/// Draws (xi, z) for one link; xi stays 1 for FemtoOwn.
LinkRealization sample_link(LinkClass cls, const ChannelParams& params, Rng& rng);

/// p_tx * mean_path_gain * xi * z, with xi forced to 1 on FemtoOwn.
double received_power(double p_tx, LinkClass cls, double d, int walls, const ChannelParams& params,
                      LinkRealization realization);

/// Slant range from a macrocell antenna to an indoor receiver at `ground_distance`.
double macro_link_distance(double ground_distance, const ChannelParams& params) noexcept;

}  // namespace femto
