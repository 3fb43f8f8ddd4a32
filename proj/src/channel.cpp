#include "femto/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace femto {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

double free_space_reference_gain(double carrier_mhz) {
    if (!(carrier_mhz > 0.0)) throw std::invalid_argument("carrier must be positive");
    const double lambda = kSpeedOfLight / (carrier_mhz * 1e6);
    const double g = lambda / (4.0 * std::numbers::pi);
    return g * g;
}

ChannelParams ChannelParams::defaults(double carrier_mhz) {
    ChannelParams p;
    p.carrier = carrier_mhz;
    p.p0_femto = free_space_reference_gain(carrier_mhz);
    p.p0_macro = p.p0_femto;
    return p;
}

void ChannelParams::validate() const {
    if (!(p0_femto > 0.0)) throw std::invalid_argument("p0_femto must be positive");
    if (!(p0_macro > 0.0)) throw std::invalid_argument("p0_macro must be positive");
    if (!(eta1 >= 2.0)) throw std::invalid_argument("eta1 must be >= 2");
    if (!(eta2 >= 2.0)) throw std::invalid_argument("eta2 must be >= 2");
    if (!(eta3 >= 2.0)) throw std::invalid_argument("eta3 must be >= 2");
    if (!(shadow_sigma_femto >= 0.0)) throw std::invalid_argument("shadow_sigma_femto must be >= 0");
    if (!(shadow_sigma_macro >= 0.0)) throw std::invalid_argument("shadow_sigma_macro must be >= 0");
    if (!(wall_loss >= 0.0)) throw std::invalid_argument("wall_loss_db must be >= 0");
    if (!(carrier > 0.0)) throw std::invalid_argument("carrier_mhz must be positive");
    if (!(bs_height >= 0.0)) throw std::invalid_argument("bs_height must be >= 0");
    if (!(fap_height >= 0.0)) throw std::invalid_argument("fap_height must be >= 0");
}

double mean_path_gain(LinkClass cls, double d, int walls, const ChannelParams& params) {
    if (!(d > 0.0)) throw std::invalid_argument("mean_path_gain: distance must be positive");
    double p0 = params.p0_femto;
    double eta = params.eta1;
    switch (cls) {
        case LinkClass::FemtoOwn: break;
        case LinkClass::FemtoCross: eta = params.eta2; break;
        case LinkClass::MacroDown:
            p0 = params.p0_macro;
            eta = params.eta3;
            break;
    }
    const double wall_factor = walls == 0 ? 1.0 : std::pow(10.0, -walls * params.wall_loss / 10.0);
    return p0 * std::pow(d, -eta) * wall_factor;
}

double sample_shadowing(double sigma_db, Rng& rng) {
    if (sigma_db == 0.0) return 1.0;
    std::normal_distribution<double> g(0.0, sigma_db);
    return std::pow(10.0, g(rng) / 10.0);
}

double sample_fast_fading(Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    return e(rng);
}

double shadow_sigma_db(LinkClass cls, const ChannelParams& params) noexcept {
    switch (cls) {
        case LinkClass::FemtoOwn: return 0.0;
        case LinkClass::FemtoCross: return params.shadow_sigma_femto;
        case LinkClass::MacroDown: return params.shadow_sigma_macro;
    }
    return 0.0;
}

LinkRealization sample_link(LinkClass cls, const ChannelParams& params, Rng& rng) {
    LinkRealization r;
    r.xi = sample_shadowing(shadow_sigma_db(cls, params), rng);
    r.z = sample_fast_fading(rng);
    return r;
}

double received_power(double p_tx, LinkClass cls, double d, int walls, const ChannelParams& params,
                      LinkRealization realization) {
    if (p_tx < 0.0) throw std::invalid_argument("received_power: negative transmit power");
    const double gain = mean_path_gain(cls, d, walls, params);
    const double xi = cls == LinkClass::FemtoOwn ? 1.0 : realization.xi;
    return p_tx * gain * xi * realization.z;
}

double macro_link_distance(double ground_distance, const ChannelParams& params) noexcept {
    return std::hypot(ground_distance, params.bs_height - params.fap_height);
}

}  // namespace femto
