#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "femto/deployment.hpp"
#include "femto/spectrum.hpp"

namespace femto {

enum class SchemeKind { Shared, Dedicated, SubBand, StaticReuse, DynamicReuse };

inline constexpr std::array<SchemeKind, 5> kAllSchemes{SchemeKind::Shared, SchemeKind::Dedicated, SchemeKind::SubBand,
                                                       SchemeKind::StaticReuse, SchemeKind::DynamicReuse};

/// "shared", "dedicated", "subband", "static", "dynamic".
std::string_view scheme_name(SchemeKind kind) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view name) noexcept;
bool is_reuse(SchemeKind kind) noexcept;

/// Edge sub-bands of the dynamic scheme, relative to the host's edge third:
/// Full is the whole third, B4/B5 its halves, B1/B2/B3 its thirds.
enum class EdgeSlot { None, Full, B4, B5, B1, B2, B3 };

std::string_view slot_name(EdgeSlot slot) noexcept;
/// 0 for Full, 1 for halves, 2 for thirds.
int slot_granularity(EdgeSlot slot) noexcept;

struct EdgeBands {
    Band full;
    std::array<Band, 2> halves;  // B4, B5
    std::array<Band, 3> thirds;  // B1, B2, B3

    Band of(EdgeSlot slot) const noexcept;
};

EdgeBands edge_bands(Band parent);

/// Third used by the femtocell centers under a macrocell carrying `host_band`
/// (the B_m1 host maps to B_m2); the edge third is the remaining one (B_m3).
constexpr int center_band_index(int host_band) noexcept { return host_band % 3 + 1; }
constexpr int edge_band_index(int host_band) noexcept { return (host_band + 1) % 3 + 1; }

struct FapAssignment {
    BandSet center_band;
    BandSet edge_band;
    BandSet full_band;  // everything the FAP transmits on
    EdgeSlot edge_slot = EdgeSlot::None;
    bool unresolved = false;  // dynamic only: no conflict-free edge band was found
};

struct AllocationPlan {
    SchemeKind scheme = SchemeKind::Shared;
    Band total;
    std::array<Band, 3> thirds{};          // B_m1, B_m2, B_m3 (reuse schemes)
    std::vector<int> macro_band_index;     // per macrocell, reuse schemes
    std::vector<BandSet> macro_bands;      // per macrocell
    std::vector<BandSet> femto_total;      // per macrocell: everything its femtocells may use
    std::vector<int> fap_host;             // per FAP id
    std::vector<std::optional<FapAssignment>> faps;  // per FAP id; empty when not installed

    bool has_fap(int id) const noexcept;
    const FapAssignment& assignment(int id) const;
    int host_band(int fap) const;
    Band center_third(int fap) const;
    Band edge_third(int fap) const;
};

AllocationPlan allocate_shared(Band total, const Deployment& deployment);
/// Femtocells take the lowest `femto_fraction` of the band. Throws unless 0 < fraction < 1.
AllocationPlan allocate_dedicated(Band total, double femto_fraction, const Deployment& deployment);
/// Macrocells keep the full band; femtocells the lowest `sub_fraction` slice.
AllocationPlan allocate_subband(Band total, double sub_fraction, const Deployment& deployment);

enum class StaticAssignment {
    Balanced,  // neighbor-blind, keeps the two femto thirds used equally often
    Greedy,    // takes the third less used among already-assigned graph neighbors
};

AllocationPlan allocate_static_reuse(Band total, const Deployment& deployment, const NeighborGraph& graph,
                                     StaticAssignment mode = StaticAssignment::Balanced);

/// Reuse-3 plan with macro bands and femto totals filled in and no FAP installed.
AllocationPlan allocate_dynamic_base(Band total, const Deployment& deployment);

/// Outcome of the new-FAP frequency selection. Interferers are the installed
/// graph neighbors sharing the new FAP's edge third, in ascending id order.
struct InstallDecision {
    bool resize_required = false;
    EdgeSlot edge = EdgeSlot::None;
    std::vector<int> interferers;
    std::vector<std::pair<int, EdgeSlot>> demotions;  // existing FAPs moved to a finer edge band
};

/// Selects center and edge bands for `fap` against the current plan. Pure.
InstallDecision dynamic_install(int fap, const AllocationPlan& plan, const NeighborGraph& interference);

/// Writes the decision into the plan. A decision with resize_required installs
/// the least-conflicting third and flags the FAP unresolved.
void apply_install(AllocationPlan& plan, int fap, const InstallDecision& decision);

/// Removes `fap` and re-installs its former neighbors in id order. Throws
/// std::out_of_range for an unknown or uninstalled id.
AllocationPlan dynamic_remove(int fap, AllocationPlan plan, const NeighborGraph& interference);

/// SON tuning for the dynamic scheme.
struct SonConfig {
    double neighbor_threshold = 60.0;  // detection range at the nominal cell radius
    double nominal_radius = 10.0;
    double shrink_factor = 0.8;
    double min_radius = 4.0;
    double inner_fraction = 0.5;
};

/// SON overlap relation: FAPs a and b interfere when
/// d <= neighbor_threshold * (r_a + r_b) / (2 * nominal_radius).
/// At nominal radii this is the plain neighbor graph.
bool footprints_overlap(const FapSite& a, const FapSite& b, const SonConfig& config);
NeighborGraph interference_graph(std::span<const FapSite> faps, const SonConfig& config);

struct ResizeOutcome {
    std::vector<int> shrunk;  // FAPs whose radius went down
    bool at_floor = false;    // nothing could shrink any further
};

/// Shrinks every conflicted FAP by `shrink_factor` (floored at `min_radius`),
/// rescales inner radii and drops interference edges that no longer hold.
ResizeOutcome resize_cells(std::span<const int> conflicted, Deployment& deployment, NeighborGraph& interference,
                           const SonConfig& config);

struct InstallReport {
    EdgeSlot edge = EdgeSlot::None;
    int resize_rounds = 0;
    bool unresolved = false;
};

/// Event-driven dynamic reuse: installs, removals and cell-size re-adjustment
/// over one deployment.
class DynamicReuseEngine {
public:
    DynamicReuseEngine(Deployment deployment, Band total, SonConfig config);
    /// Uses a precomputed nominal interference graph (must match `deployment`).
    DynamicReuseEngine(Deployment deployment, Band total, SonConfig config, NeighborGraph nominal);

    InstallReport install(int fap);
    /// Installs every FAP in ascending id order.
    void install_all();
    void remove(int fap);

    const AllocationPlan& plan() const noexcept { return plan_; }
    const Deployment& deployment() const noexcept { return deployment_; }
    const NeighborGraph& interference() const noexcept { return interference_; }
    std::vector<int> unresolved() const;

    AllocationPlan release_plan() && { return std::move(plan_); }
    Deployment release_deployment() && { return std::move(deployment_); }

private:
    Deployment deployment_;
    SonConfig config_;
    NeighborGraph interference_;
    AllocationPlan plan_;
};

/// Band the reference UE is served on: the full assignment for non-dynamic
/// schemes, the center or the edge band for the dynamic one.
BandSet serving_band(const AllocationPlan& plan, int fap, bool ue_in_center);
/// 1 iff FAP `fap_i` transmits on any frequency serving the reference UE.
int indicator_x(const AllocationPlan& plan, int fap_i, int reference_fap, bool ue_in_center);
/// 1 iff macrocell `macro_j` transmits on any frequency serving the reference UE.
int indicator_y(const AllocationPlan& plan, int macro_j, int reference_fap, bool ue_in_center);

/// Fraction of directed neighbor pairs (a, b) with indicator_x(b, a) == 1, with
/// a's UE placed per `ue_in_center`. NaN when the graph has no edges.
double same_band_neighbor_fraction(const AllocationPlan& plan, const NeighborGraph& graph, bool ue_in_center);

/// Disjointness and coverage checks of the band plan; empty when it is sound.
std::vector<std::string> check_plan(const AllocationPlan& plan);

/// One record per installed FAP: "<id> <host> <center> <edge>", bands in kHz.
std::string dump_plan(const AllocationPlan& plan);

}  // namespace femto
