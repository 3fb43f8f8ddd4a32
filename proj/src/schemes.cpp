#include "femto/schemes.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace femto {

std::string_view scheme_name(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::Shared: return "shared";
        case SchemeKind::Dedicated: return "dedicated";
        case SchemeKind::SubBand: return "subband";
        case SchemeKind::StaticReuse: return "static";
        case SchemeKind::DynamicReuse: return "dynamic";
    }
    return "?";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) noexcept {
    for (SchemeKind k : kAllSchemes) {
        if (scheme_name(k) == name) return k;
    }
    return std::nullopt;
}

bool is_reuse(SchemeKind kind) noexcept {
    return kind == SchemeKind::StaticReuse || kind == SchemeKind::DynamicReuse;
}

std::string_view slot_name(EdgeSlot slot) noexcept {
    switch (slot) {
        case EdgeSlot::None: return "none";
        case EdgeSlot::Full: return "full";
        case EdgeSlot::B4: return "B4";
        case EdgeSlot::B5: return "B5";
        case EdgeSlot::B1: return "B1";
        case EdgeSlot::B2: return "B2";
        case EdgeSlot::B3: return "B3";
    }
    return "?";
}

int slot_granularity(EdgeSlot slot) noexcept {
    switch (slot) {
        case EdgeSlot::Full: return 0;
        case EdgeSlot::B4:
        case EdgeSlot::B5: return 1;
        case EdgeSlot::B1:
        case EdgeSlot::B2:
        case EdgeSlot::B3: return 2;
        case EdgeSlot::None: break;
    }
    return -1;
}

Band EdgeBands::of(EdgeSlot slot) const noexcept {
    switch (slot) {
        case EdgeSlot::Full: return full;
        case EdgeSlot::B4: return halves[0];
        case EdgeSlot::B5: return halves[1];
        case EdgeSlot::B1: return thirds[0];
        case EdgeSlot::B2: return thirds[1];
        case EdgeSlot::B3: return thirds[2];
        case EdgeSlot::None: break;
    }
    return {};
}

EdgeBands edge_bands(Band parent) {
    const auto h = partition_equal(parent, 2);
    const auto t = partition_equal(parent, 3);
    return {parent, {h[0], h[1]}, {t[0], t[1], t[2]}};
}

bool AllocationPlan::has_fap(int id) const noexcept {
    return id >= 0 && static_cast<std::size_t>(id) < faps.size() && faps[static_cast<std::size_t>(id)].has_value();
}

const FapAssignment& AllocationPlan::assignment(int id) const {
    if (!has_fap(id)) throw std::out_of_range("no assignment for FAP " + std::to_string(id));
    return *faps[static_cast<std::size_t>(id)];
}

int AllocationPlan::host_band(int fap) const {
    return macro_band_index.at(static_cast<std::size_t>(fap_host.at(static_cast<std::size_t>(fap))));
}

Band AllocationPlan::center_third(int fap) const {
    return thirds[static_cast<std::size_t>(center_band_index(host_band(fap)) - 1)];
}

Band AllocationPlan::edge_third(int fap) const {
    return thirds[static_cast<std::size_t>(edge_band_index(host_band(fap)) - 1)];
}

namespace {

AllocationPlan base_plan(SchemeKind kind, Band total, const Deployment& deployment) {
    if (total.empty()) throw std::invalid_argument("allocation: total band must be nonempty");
    AllocationPlan plan;
    plan.scheme = kind;
    plan.total = total;
    const auto t = partition_equal(total, 3);
    plan.thirds = {t[0], t[1], t[2]};
    for (const auto& m : deployment.macrocells) plan.macro_band_index.push_back(m.band_index);
    for (const auto& f : deployment.faps) plan.fap_host.push_back(f.host_macrocell);
    plan.faps.resize(deployment.faps.size());
    return plan;
}

void assign_everywhere(AllocationPlan& plan, const BandSet& macro, const BandSet& femto) {
    plan.macro_bands.assign(plan.macro_band_index.size(), macro);
    plan.femto_total.assign(plan.macro_band_index.size(), femto);
    for (auto& a : plan.faps) a = FapAssignment{femto, {}, femto, EdgeSlot::None, false};
}

Band lower_slice(Band total, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("allocation: band fraction must lie strictly between 0 and 1");
    }
    const Khz w = static_cast<Khz>(std::llround(static_cast<double>(total.width()) * fraction));
    if (w <= 0 || w >= total.width()) throw std::invalid_argument("allocation: band fraction rounds to an empty slice");
    return {total.lo, total.lo + w};
}

void fill_reuse_totals(AllocationPlan& plan) {
    plan.macro_bands.clear();
    plan.femto_total.clear();
    for (int b : plan.macro_band_index) {
        if (b < 1 || b > 3) throw std::invalid_argument("reuse allocation: macrocell band index must be 1, 2 or 3");
        const Band own = plan.thirds[static_cast<std::size_t>(b - 1)];
        plan.macro_bands.emplace_back(own);
        plan.femto_total.push_back(subtract(BandSet(plan.total), BandSet(own)));
    }
}

}  // namespace

AllocationPlan allocate_shared(Band total, const Deployment& deployment) {
    AllocationPlan plan = base_plan(SchemeKind::Shared, total, deployment);
    assign_everywhere(plan, total, total);
    return plan;
}

AllocationPlan allocate_dedicated(Band total, double femto_fraction, const Deployment& deployment) {
    AllocationPlan plan = base_plan(SchemeKind::Dedicated, total, deployment);
    const Band femto = lower_slice(total, femto_fraction);
    assign_everywhere(plan, Band{femto.hi, total.hi}, femto);
    return plan;
}

AllocationPlan allocate_subband(Band total, double sub_fraction, const Deployment& deployment) {
    AllocationPlan plan = base_plan(SchemeKind::SubBand, total, deployment);
    assign_everywhere(plan, total, lower_slice(total, sub_fraction));
    return plan;
}

AllocationPlan allocate_static_reuse(Band total, const Deployment& deployment, const NeighborGraph& graph,
                                     StaticAssignment mode) {
    AllocationPlan plan = base_plan(SchemeKind::StaticReuse, total, deployment);
    fill_reuse_totals(plan);

    // per macrocell: how often each of its two femto thirds has been handed out
    std::vector<std::array<int, 2>> usage(plan.macro_band_index.size(), {0, 0});
    for (std::size_t id = 0; id < plan.faps.size(); ++id) {
        const int fap = static_cast<int>(id);
        const int host = plan.fap_host[id];
        const int hb = plan.host_band(fap);
        const std::array<int, 2> options{center_band_index(hb), edge_band_index(hb)};
        std::array<int, 2> local{0, 0};
        if (mode == StaticAssignment::Greedy) {
            for (int n : graph.neighbors(fap)) {
                if (!plan.has_fap(n)) continue;
                const BandSet& nb = plan.assignment(n).full_band;
                for (int k = 0; k < 2; ++k) {
                    if (overlaps(nb, BandSet(plan.thirds[static_cast<std::size_t>(options[k] - 1)]))) ++local[k];
                }
            }
        }
        auto& global = usage[static_cast<std::size_t>(host)];
        int pick = 0;
        if (local[1] < local[0] || (local[1] == local[0] && global[1] < global[0])) pick = 1;
        ++global[static_cast<std::size_t>(pick)];
        const BandSet band(plan.thirds[static_cast<std::size_t>(options[static_cast<std::size_t>(pick)] - 1)]);
        plan.faps[id] = FapAssignment{band, {}, band, EdgeSlot::None, false};
    }
    return plan;
}

AllocationPlan allocate_dynamic_base(Band total, const Deployment& deployment) {
    AllocationPlan plan = base_plan(SchemeKind::DynamicReuse, total, deployment);
    fill_reuse_totals(plan);
    return plan;
}

BandSet serving_band(const AllocationPlan& plan, int fap, bool ue_in_center) {
    const FapAssignment& a = plan.assignment(fap);
    if (plan.scheme != SchemeKind::DynamicReuse) return a.full_band;
    return ue_in_center ? a.center_band : a.edge_band;
}

int indicator_x(const AllocationPlan& plan, int fap_i, int reference_fap, bool ue_in_center) {
    return overlaps(serving_band(plan, reference_fap, ue_in_center), plan.assignment(fap_i).full_band) ? 1 : 0;
}

int indicator_y(const AllocationPlan& plan, int macro_j, int reference_fap, bool ue_in_center) {
    return overlaps(serving_band(plan, reference_fap, ue_in_center),
                    plan.macro_bands.at(static_cast<std::size_t>(macro_j)))
               ? 1
               : 0;
}

double same_band_neighbor_fraction(const AllocationPlan& plan, const NeighborGraph& graph, bool ue_in_center) {
    std::size_t pairs = 0;
    std::size_t same = 0;
    for (std::size_t a = 0; a < graph.size(); ++a) {
        if (!plan.has_fap(static_cast<int>(a))) continue;
        for (int b : graph.neighbors(static_cast<int>(a))) {
            if (!plan.has_fap(b)) continue;
            ++pairs;
            same += static_cast<std::size_t>(indicator_x(plan, b, static_cast<int>(a), ue_in_center));
        }
    }
    if (pairs == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(same) / static_cast<double>(pairs);
}

std::vector<std::string> check_plan(const AllocationPlan& plan) {
    std::vector<std::string> issues;
    auto fail = [&issues](std::string what) { issues.push_back(std::move(what)); };
    const BandSet total(plan.total);

    for (std::size_t m = 0; m < plan.macro_bands.size(); ++m) {
        const BandSet& macro = plan.macro_bands[m];
        const BandSet& femto = plan.femto_total[m];
        const std::string where = " (macrocell " + std::to_string(m) + ")";
        switch (plan.scheme) {
            case SchemeKind::Shared:
                if (macro != total || femto != total) fail("shared: macro and femto bands must equal B_T" + where);
                if (intersect(macro, femto) != total) fail("shared: macro and femto must intersect in B_T" + where);
                break;
            case SchemeKind::SubBand:
                if (macro != total) fail("subband: macro band must equal B_T" + where);
                if (femto.empty() || intersect(macro, femto) != femto) fail("subband: femto band must lie in macro" + where);
                if (unite(macro, femto) != total) fail("subband: union must equal B_T" + where);
                break;
            case SchemeKind::Dedicated:
            case SchemeKind::StaticReuse:
            case SchemeKind::DynamicReuse:
                if (!intersect(macro, femto).empty()) fail("macro and femto bands overlap" + where);
                if (unite(macro, femto) != total) fail("macro and femto bands do not cover B_T" + where);
                if (macro.empty() || femto.empty()) fail("empty macro or femto band" + where);
                break;
        }
    }
    if (is_reuse(plan.scheme)) {
        const Khz w = plan.thirds[0].width();
        for (const Band& t : plan.thirds) {
            if (t.width() < w || t.width() > w + 2) fail("reuse thirds are not equal");
        }
    }

    for (std::size_t id = 0; id < plan.faps.size(); ++id) {
        if (!plan.faps[id]) continue;
        const FapAssignment& a = *plan.faps[id];
        const int fap = static_cast<int>(id);
        const std::string where = " (FAP " + std::to_string(id) + ")";
        const auto host = static_cast<std::size_t>(plan.fap_host[id]);
        if (!is_subset(a.full_band, plan.femto_total.at(host))) fail("FAP band outside femto allocation" + where);
        if (plan.scheme == SchemeKind::StaticReuse) {
            const int hb = plan.host_band(fap);
            const BandSet o1(plan.thirds[static_cast<std::size_t>(center_band_index(hb) - 1)]);
            const BandSet o2(plan.thirds[static_cast<std::size_t>(edge_band_index(hb) - 1)]);
            if (a.full_band != o1 && a.full_band != o2) fail("static FAP must hold exactly one non-host third" + where);
        }
        if (plan.scheme == SchemeKind::DynamicReuse) {
            if (a.center_band != BandSet(plan.center_third(fap))) fail("dynamic center band is not the fixed center third" + where);
            const EdgeBands eb = edge_bands(plan.edge_third(fap));
            if (a.edge_slot == EdgeSlot::None || a.edge_band != BandSet(eb.of(a.edge_slot))) {
                fail("dynamic edge band is not one of the enumerated edge bands" + where);
            }
            if (overlaps(a.center_band, a.edge_band)) fail("dynamic center and edge overlap" + where);
            if (a.full_band != unite(a.center_band, a.edge_band)) fail("dynamic full band mismatch" + where);
        }
    }
    return issues;
}

std::string dump_plan(const AllocationPlan& plan) {
    std::ostringstream os;
    os << "# scheme " << scheme_name(plan.scheme) << "\n# id host center_khz edge_khz\n";
    for (std::size_t id = 0; id < plan.faps.size(); ++id) {
        if (!plan.faps[id]) continue;
        const FapAssignment& a = *plan.faps[id];
        os << id << ' ' << plan.fap_host[id] << ' ' << a.center_band << ' ' << a.edge_band << '\n';
    }
    return os.str();
}

}  // namespace femto
