#include "femto/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace femto {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string_view key, std::string_view v) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(v) + "'");
    }
    return x;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
    Int x{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
    }
    return x;
}

std::string fmt(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);  // shortest round-trip form
    return std::string(buf, r.ptr);
}

template <typename Seq>
std::string join(const Seq& seq) {
    std::string out;
    for (const auto& x : seq) {
        if (!out.empty()) out += ',';
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, SchemeKind>) {
            out += scheme_name(x);
        } else {
            out += std::to_string(x);
        }
    }
    return out;
}

struct Field {
    const char* key;
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

#define FEMTO_DOUBLE(name)                                                                      \
    Field {                                                                                     \
        #name, [](ScenarioConfig& c, std::string_view v) { c.name = to_double(#name, v); },     \
            [](const ScenarioConfig& c) { return fmt(c.name); }                                 \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table{
        {"seed", [](ScenarioConfig& c, std::string_view v) { c.seed = to_int<std::uint64_t>("seed", v); },
         [](const ScenarioConfig& c) { return std::to_string(c.seed); }},
        {"schemes",
         [](ScenarioConfig& c, std::string_view v) {
             c.schemes.clear();
             for (auto item : split_list(v)) {
                 const auto s = parse_scheme(item);
                 if (!s) throw ConfigError("schemes", "unknown scheme '" + std::string(item) + "'");
                 c.schemes.push_back(*s);
             }
         },
         [](const ScenarioConfig& c) { return join(c.schemes); }},
        {"counts",
         [](ScenarioConfig& c, std::string_view v) {
             c.counts.clear();
             for (auto item : split_list(v)) c.counts.push_back(to_int<int>("counts", item));
         },
         [](const ScenarioConfig& c) { return join(c.counts); }},
        {"count_mode",
         [](ScenarioConfig& c, std::string_view v) {
             if (v == "fixed") c.count_mode = CountMode::Fixed;
             else if (v == "poisson") c.count_mode = CountMode::Poisson;
             else throw ConfigError("count_mode", "expected fixed or poisson, got '" + std::string(v) + "'");
         },
         [](const ScenarioConfig& c) { return std::string(c.count_mode == CountMode::Fixed ? "fixed" : "poisson"); }},
        {"mc_mode",
         [](ScenarioConfig& c, std::string_view v) {
             if (v == "full") c.mc_mode = McMode::Full;
             else if (v == "fading") c.mc_mode = McMode::FadingOnly;
             else throw ConfigError("mc_mode", "expected full or fading, got '" + std::string(v) + "'");
         },
         [](const ScenarioConfig& c) { return std::string(c.mc_mode == McMode::Full ? "full" : "fading"); }},
        {"trials", [](ScenarioConfig& c, std::string_view v) { c.trials = to_int<std::size_t>("trials", v); },
         [](const ScenarioConfig& c) { return std::to_string(c.trials); }},
        {"threads", [](ScenarioConfig& c, std::string_view v) { c.threads = to_int<unsigned>("threads", v); },
         [](const ScenarioConfig& c) { return std::to_string(c.threads); }},
        FEMTO_DOUBLE(band_width_mhz),
        FEMTO_DOUBLE(macro_radius),
        FEMTO_DOUBLE(femto_radius),
        FEMTO_DOUBLE(inner_radius_fraction),
        FEMTO_DOUBLE(reference_fap_distance),
        FEMTO_DOUBLE(ue_distance),
        FEMTO_DOUBLE(carrier_mhz),
        FEMTO_DOUBLE(macro_tx_power),
        FEMTO_DOUBLE(fap_tx_power_max),
        FEMTO_DOUBLE(bs_height),
        FEMTO_DOUBLE(fap_height),
        FEMTO_DOUBLE(gamma_db),
        FEMTO_DOUBLE(neighbor_threshold),
        {"walls_between_femtocells",
         [](ScenarioConfig& c, std::string_view v) {
             c.walls_between_femtocells = to_int<int>("walls_between_femtocells", v);
         },
         [](const ScenarioConfig& c) { return std::to_string(c.walls_between_femtocells); }},
        FEMTO_DOUBLE(dedicated_femto_fraction),
        FEMTO_DOUBLE(subband_fraction),
        {"tier_bands",
         [](ScenarioConfig& c, std::string_view v) {
             const auto items = split_list(v);
             if (items.size() != 6) throw ConfigError("tier_bands", "expected 6 comma-separated band indices");
             for (std::size_t k = 0; k < 6; ++k) c.tier_bands[k] = to_int<int>("tier_bands", items[k]);
         },
         [](const ScenarioConfig& c) { return join(c.tier_bands); }},
        FEMTO_DOUBLE(eta1),
        FEMTO_DOUBLE(eta2),
        FEMTO_DOUBLE(eta3),
        FEMTO_DOUBLE(shadow_sigma_femto),
        FEMTO_DOUBLE(shadow_sigma_macro),
        FEMTO_DOUBLE(wall_loss_db),
        {"p0_femto",
         [](ScenarioConfig& c, std::string_view v) {
             if (v == "auto") c.p0_femto.reset();
             else c.p0_femto = to_double("p0_femto", v);
         },
         [](const ScenarioConfig& c) { return c.p0_femto ? fmt(*c.p0_femto) : std::string("auto"); }},
        {"p0_macro",
         [](ScenarioConfig& c, std::string_view v) {
             if (v == "auto") c.p0_macro.reset();
             else c.p0_macro = to_double("p0_macro", v);
         },
         [](const ScenarioConfig& c) { return c.p0_macro ? fmt(*c.p0_macro) : std::string("auto"); }},
        {"static_assignment",
         [](ScenarioConfig& c, std::string_view v) {
             if (v == "balanced") c.static_assignment = StaticAssignment::Balanced;
             else if (v == "greedy") c.static_assignment = StaticAssignment::Greedy;
             else throw ConfigError("static_assignment", "expected balanced or greedy, got '" + std::string(v) + "'");
         },
         [](const ScenarioConfig& c) {
             return std::string(c.static_assignment == StaticAssignment::Balanced ? "balanced" : "greedy");
         }},
        FEMTO_DOUBLE(shrink_factor),
        FEMTO_DOUBLE(min_femto_radius),
        {"dense_threshold",
         [](ScenarioConfig& c, std::string_view v) { c.dense_threshold = to_int<int>("dense_threshold", v); },
         [](const ScenarioConfig& c) { return std::to_string(c.dense_threshold); }},
        FEMTO_DOUBLE(se_cap),
    };
    return table;
}

#undef FEMTO_DOUBLE

void require(bool ok, const char* key, const std::string& message) {
    if (!ok) throw ConfigError(key, message);
}

}  // namespace

ChannelParams ScenarioConfig::channel() const {
    ChannelParams p = ChannelParams::defaults(carrier_mhz);
    if (p0_femto) p.p0_femto = *p0_femto;
    if (p0_macro) p.p0_macro = *p0_macro;
    p.eta1 = eta1;
    p.eta2 = eta2;
    p.eta3 = eta3;
    p.shadow_sigma_femto = shadow_sigma_femto;
    p.shadow_sigma_macro = shadow_sigma_macro;
    p.wall_loss = wall_loss_db;
    p.bs_height = bs_height;
    p.fap_height = fap_height;
    return p;
}

FemtoLayout ScenarioConfig::layout() const {
    return FemtoLayout{reference_fap_distance, femto_radius, inner_radius_fraction, fap_tx_power_max};
}

SonConfig ScenarioConfig::son() const {
    return SonConfig{neighbor_threshold, femto_radius, shrink_factor, min_femto_radius, inner_radius_fraction};
}

Band ScenarioConfig::total_band() const { return Band{0, khz_from_mhz(band_width_mhz)}; }

void ScenarioConfig::validate() const {
    require(!schemes.empty(), "schemes", "at least one scheme is required");
    require(!counts.empty(), "counts", "at least one femtocell count is required");
    for (int n : counts) require(n >= 0, "counts", "femtocell counts must be >= 0");
    require(trials >= 1, "trials", "must be >= 1");
    require(band_width_mhz > 0.0 && khz_from_mhz(band_width_mhz) >= 6, "band_width_mhz", "must be positive");
    require(macro_radius > 0.0, "macro_radius", "must be positive");
    require(femto_radius > 0.0, "femto_radius", "must be positive");
    require(inner_radius_fraction > 0.0 && inner_radius_fraction <= 1.0, "inner_radius_fraction",
            "must be in (0, 1]");
    require(reference_fap_distance >= 0.0 && reference_fap_distance <= macro_radius, "reference_fap_distance",
            "must lie inside the macrocell");
    require(ue_distance > 0.0, "ue_distance", "must be positive");
    require(carrier_mhz > 0.0, "carrier_mhz", "must be positive");
    require(macro_tx_power >= 0.0, "macro_tx_power", "must be >= 0");
    require(fap_tx_power_max > 0.0, "fap_tx_power_max", "must be positive");
    require(bs_height >= 0.0, "bs_height", "must be >= 0");
    require(fap_height >= 0.0, "fap_height", "must be >= 0");
    require(neighbor_threshold > 0.0, "neighbor_threshold", "must be positive");
    require(walls_between_femtocells >= 0, "walls_between_femtocells", "must be >= 0");
    require(dedicated_femto_fraction > 0.0 && dedicated_femto_fraction < 1.0, "dedicated_femto_fraction",
            "must be in (0, 1)");
    require(subband_fraction > 0.0 && subband_fraction < 1.0, "subband_fraction", "must be in (0, 1)");
    for (int b : tier_bands) require(b >= 1 && b <= 3, "tier_bands", "band indices must be 1, 2 or 3");
    require(eta1 >= 2.0, "eta1", "must be >= 2");
    require(eta2 >= 2.0, "eta2", "must be >= 2");
    require(eta3 >= 2.0, "eta3", "must be >= 2");
    require(shadow_sigma_femto >= 0.0, "shadow_sigma_femto", "must be >= 0");
    require(shadow_sigma_macro >= 0.0, "shadow_sigma_macro", "must be >= 0");
    require(wall_loss_db >= 0.0, "wall_loss_db", "must be >= 0");
    require(!p0_femto || *p0_femto > 0.0, "p0_femto", "must be positive");
    require(!p0_macro || *p0_macro > 0.0, "p0_macro", "must be positive");
    require(shrink_factor > 0.0 && shrink_factor < 1.0, "shrink_factor", "must be in (0, 1)");
    require(min_femto_radius > 0.0 && min_femto_radius <= femto_radius, "min_femto_radius",
            "must be in (0, femto_radius]");
    require(dense_threshold >= 0, "dense_threshold", "must be >= 0");
    require(se_cap > 0.0, "se_cap", "must be positive");
}

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
    for (const auto& f : fields()) {
        if (key == f.key) {
            f.set(config, trim(value));
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key");
}

ScenarioConfig parse_config(std::string_view text, const std::string& source) {
    ScenarioConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) throw ConfigError("", where + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", where + ": missing key");
        try {
            set_config_value(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.key(), where + ": " + e.what(), nullptr);
        }
    }
    config.validate();
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string format_config(const ScenarioConfig& config) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.emplace_back(f.key);
    return keys;
}

}  // namespace femto
