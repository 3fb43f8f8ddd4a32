#include <algorithm>
#include <stdexcept>

#include "femto/schemes.hpp"

namespace femto {

namespace {

constexpr std::array<EdgeSlot, 2> kHalves{EdgeSlot::B4, EdgeSlot::B5};
constexpr std::array<EdgeSlot, 3> kThirds{EdgeSlot::B1, EdgeSlot::B2, EdgeSlot::B3};

std::span<const EdgeSlot> slots_at(int granularity) {
    if (granularity == 1) return kHalves;
    return kThirds;
}

bool band_overlaps(Band a, Band b) { return std::max(a.lo, b.lo) < std::min(a.hi, b.hi); }

bool clashes(Band candidate, const std::vector<BandSet>& taken) {
    return std::any_of(taken.begin(), taken.end(),
                       [&](const BandSet& t) { return overlaps(BandSet(candidate), t); });
}

FapAssignment dynamic_assignment(const AllocationPlan& plan, int fap, EdgeSlot slot, bool unresolved) {
    const BandSet center(plan.center_third(fap));
    const BandSet edge(edge_bands(plan.edge_third(fap)).of(slot));
    return FapAssignment{center, edge, unite(center, edge), slot, unresolved};
}

}  // namespace

InstallDecision dynamic_install(int fap, const AllocationPlan& plan, const NeighborGraph& interference) {
    if (plan.scheme != SchemeKind::DynamicReuse) throw std::invalid_argument("dynamic_install: not a dynamic plan");
    const Band parent = plan.edge_third(fap);
    const EdgeBands eb = edge_bands(parent);

    InstallDecision decision;
    for (int n : interference.neighbors(fap)) {
        if (plan.has_fap(n) && plan.edge_third(n) == parent) decision.interferers.push_back(n);
    }
    const auto& intf = decision.interferers;
    if (intf.empty()) {
        decision.edge = EdgeSlot::Full;
        return decision;
    }
    if (intf.size() > 3) {
        decision.resize_required = true;
        return decision;
    }

    int finest = 1;
    for (int j : intf) finest = std::max(finest, slot_granularity(plan.assignment(j).edge_slot));

    // Try the interferers' granularity first; drop to a finer one only when no
    // conflict-free band exists. Coarser interferers are demoted to the level.
    for (int level = finest; level <= 2; ++level) {
        std::vector<EdgeSlot> trial;
        for (int j : intf) trial.push_back(plan.assignment(j).edge_slot);

        bool feasible = true;
        for (std::size_t k = 0; k < intf.size() && feasible; ++k) {
            if (slot_granularity(trial[k]) >= level) continue;
            const int j = intf[k];
            std::vector<BandSet> taken;
            for (int n : interference.neighbors(j)) {
                if (n == fap || !plan.has_fap(n)) continue;
                if (std::find(intf.begin(), intf.end(), n) != intf.end()) continue;
                taken.push_back(plan.assignment(n).edge_band);
            }
            for (std::size_t o = 0; o < intf.size(); ++o) {
                if (o != k) taken.emplace_back(eb.of(trial[o]));
            }
            feasible = false;
            for (EdgeSlot s : slots_at(level)) {
                if (!clashes(eb.of(s), taken)) {
                    trial[k] = s;
                    feasible = true;
                    break;
                }
            }
        }
        if (!feasible) continue;

        // cyclic successor of the first interferer's band: B4<->B5, B1->B2->B3->B1
        const auto slots = slots_at(level);
        const auto first = std::find(slots.begin(), slots.end(), trial.front());
        const std::size_t start = first == slots.end() ? 0 : static_cast<std::size_t>(first - slots.begin());
        for (std::size_t step = 1; step <= slots.size(); ++step) {
            const EdgeSlot candidate = slots[(start + step) % slots.size()];
            const bool free = std::none_of(trial.begin(), trial.end(), [&](EdgeSlot t) {
                return band_overlaps(eb.of(candidate), eb.of(t));
            });
            if (!free) continue;
            decision.edge = candidate;
            for (std::size_t k = 0; k < intf.size(); ++k) {
                if (trial[k] != plan.assignment(intf[k]).edge_slot) decision.demotions.emplace_back(intf[k], trial[k]);
            }
            return decision;
        }
    }
    decision.resize_required = true;
    return decision;
}

void apply_install(AllocationPlan& plan, int fap, const InstallDecision& decision) {
    if (!decision.resize_required) {
        for (const auto& [j, slot] : decision.demotions) {
            const bool unresolved = plan.assignment(j).unresolved;
            plan.faps[static_cast<std::size_t>(j)] = dynamic_assignment(plan, j, slot, unresolved);
        }
        plan.faps[static_cast<std::size_t>(fap)] = dynamic_assignment(plan, fap, decision.edge, false);
        return;
    }
    // best effort: the third overlapped by the fewest interferers
    const EdgeBands eb = edge_bands(plan.edge_third(fap));
    EdgeSlot best = EdgeSlot::B1;
    std::size_t best_hits = static_cast<std::size_t>(-1);
    for (EdgeSlot s : kThirds) {
        std::size_t hits = 0;
        for (int j : decision.interferers) {
            if (overlaps(BandSet(eb.of(s)), plan.assignment(j).edge_band)) ++hits;
        }
        if (hits < best_hits) {
            best_hits = hits;
            best = s;
        }
    }
    plan.faps[static_cast<std::size_t>(fap)] = dynamic_assignment(plan, fap, best, true);
}

AllocationPlan dynamic_remove(int fap, AllocationPlan plan, const NeighborGraph& interference) {
    if (!plan.has_fap(fap)) throw std::out_of_range("dynamic_remove: unknown FAP " + std::to_string(fap));
    std::vector<int> former;
    for (int n : interference.neighbors(fap)) {
        if (plan.has_fap(n)) former.push_back(n);
    }
    plan.faps[static_cast<std::size_t>(fap)].reset();
    for (int n : former) plan.faps[static_cast<std::size_t>(n)].reset();
    for (int n : former) apply_install(plan, n, dynamic_install(n, plan, interference));
    return plan;
}

bool footprints_overlap(const FapSite& a, const FapSite& b, const SonConfig& config) {
    const double range = config.neighbor_threshold * (a.cell_radius + b.cell_radius) / (2.0 * config.nominal_radius);
    return distance(a.position, b.position) <= range;
}

NeighborGraph interference_graph(std::span<const FapSite> faps, const SonConfig& config) {
    double max_radius = config.nominal_radius;
    for (const auto& f : faps) max_radius = std::max(max_radius, f.cell_radius);
    NeighborGraph g = neighbor_graph(faps, config.neighbor_threshold * max_radius / config.nominal_radius);
    for (std::size_t i = 0; i < faps.size(); ++i) {
        const std::vector<int> nbrs = g.neighbors(static_cast<int>(i));
        for (int j : nbrs) {
            if (j > static_cast<int>(i) && !footprints_overlap(faps[i], faps[static_cast<std::size_t>(j)], config)) {
                g.remove_edge(static_cast<int>(i), j);
            }
        }
    }
    return g;
}

ResizeOutcome resize_cells(std::span<const int> conflicted, Deployment& deployment, NeighborGraph& interference,
                           const SonConfig& config) {
    ResizeOutcome out;
    for (int id : conflicted) {
        FapSite& f = deployment.faps.at(static_cast<std::size_t>(id));
        if (f.cell_radius <= config.min_radius) continue;
        f.cell_radius = std::max(config.min_radius, f.cell_radius * config.shrink_factor);
        f.inner_radius = config.inner_fraction * f.cell_radius;
        out.shrunk.push_back(id);
    }
    out.at_floor = out.shrunk.empty();
    for (int id : out.shrunk) {
        const std::vector<int> nbrs = interference.neighbors(id);
        for (int n : nbrs) {
            if (!footprints_overlap(deployment.faps[static_cast<std::size_t>(id)],
                                    deployment.faps[static_cast<std::size_t>(n)], config)) {
                interference.remove_edge(id, n);
            }
        }
    }
    return out;
}

DynamicReuseEngine::DynamicReuseEngine(Deployment deployment, Band total, SonConfig config)
    : deployment_(std::move(deployment)), config_(config) {
    interference_ = interference_graph(deployment_.faps, config_);
    plan_ = allocate_dynamic_base(total, deployment_);
}

DynamicReuseEngine::DynamicReuseEngine(Deployment deployment, Band total, SonConfig config, NeighborGraph nominal)
    : deployment_(std::move(deployment)), config_(config), interference_(std::move(nominal)) {
    if (interference_.size() != deployment_.faps.size()) {
        throw std::invalid_argument("DynamicReuseEngine: graph does not match deployment");
    }
    plan_ = allocate_dynamic_base(total, deployment_);
}

InstallReport DynamicReuseEngine::install(int fap) {
    InstallReport report;
    for (;;) {
        const InstallDecision d = dynamic_install(fap, plan_, interference_);
        if (!d.resize_required) {
            apply_install(plan_, fap, d);
            report.edge = d.edge;
            return report;
        }
        std::vector<int> conflicted{fap};
        conflicted.insert(conflicted.end(), d.interferers.begin(), d.interferers.end());
        const ResizeOutcome r = resize_cells(conflicted, deployment_, interference_, config_);
        if (r.at_floor) {
            const InstallDecision again = dynamic_install(fap, plan_, interference_);
            apply_install(plan_, fap, again);
            report.edge = plan_.assignment(fap).edge_slot;
            report.unresolved = plan_.assignment(fap).unresolved;
            return report;
        }
        ++report.resize_rounds;
    }
}

void DynamicReuseEngine::install_all() {
    for (std::size_t id = 0; id < deployment_.faps.size(); ++id) install(static_cast<int>(id));
}

void DynamicReuseEngine::remove(int fap) {
    if (!plan_.has_fap(fap)) throw std::out_of_range("remove: unknown FAP " + std::to_string(fap));
    std::vector<int> former;
    for (int n : interference_.neighbors(fap)) {
        if (plan_.has_fap(n)) former.push_back(n);
    }
    plan_.faps[static_cast<std::size_t>(fap)].reset();
    interference_.isolate(fap);
    for (int n : former) plan_.faps[static_cast<std::size_t>(n)].reset();
    for (int n : former) install(n);
}

std::vector<int> DynamicReuseEngine::unresolved() const {
    std::vector<int> out;
    for (std::size_t id = 0; id < plan_.faps.size(); ++id) {
        if (plan_.faps[id] && plan_.faps[id]->unresolved) out.push_back(static_cast<int>(id));
    }
    return out;
}

}  // namespace femto
