#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "femto/rng.hpp"

namespace femto {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

struct MacrocellSite {
    int id = 0;
    Point center;
    double radius = 0.0;
    int band_index = 1;  // 1, 2 or 3: which third of the spectrum the site transmits on
    double tx_power_w = 1500.0;
};

struct FapSite {
    int id = 0;
    Point position;
    double cell_radius = 10.0;
    double inner_radius = 5.0;
    int host_macrocell = 0;
    double tx_power_w = 0.01;
};

/// Symmetric adjacency over FAP ids. Neighbor lists are sorted ascending.
class NeighborGraph {
public:
    NeighborGraph() = default;
    explicit NeighborGraph(std::size_t nodes) : adj_(nodes) {}

    std::size_t size() const noexcept { return adj_.size(); }
    const std::vector<int>& neighbors(int id) const { return adj_.at(static_cast<std::size_t>(id)); }
    bool has_edge(int a, int b) const;
    std::size_t edge_count() const noexcept;

    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    /// Drops every edge touching `id`.
    void isolate(int id);

private:
    std::vector<std::vector<int>> adj_;
};

/// Layout knobs shared by the placement routines.
struct FemtoLayout {
    double reference_distance = 200.0;
    double cell_radius = 10.0;
    double inner_fraction = 0.5;
    double tx_power_w = 0.01;
};

/// Reference macrocell plus the six first-tier sites.
struct Deployment {
    std::vector<MacrocellSite> macrocells;
    std::vector<FapSite> faps;  // faps[i].id == i; id 0 is the reference FAP
    Point reference_ue;
    double ue_distance = 5.0;  // distance from the reference UE to FAP 0
    NeighborGraph neighbors;
};

inline constexpr std::array<int, 6> kDefaultTierBands{2, 3, 2, 3, 2, 3};

/// Hexagonal reuse-3 cluster: the reference site at the origin carries band 1,
/// six first-tier sites sit at sqrt(3) * macro_radius with `tier_bands` going
/// around the ring. Throws std::invalid_argument for macro_radius <= 0.
std::vector<MacrocellSite> build_cluster(double macro_radius, std::array<int, 6> tier_bands = kDefaultTierBands,
                                         double tx_power_w = 1500.0);

/// Returns n + 1 sites. Site 0 is the reference FAP at exactly
/// `layout.reference_distance` from the reference macrocell center; the other n
/// are uniform over the macrocell disk.
std::vector<FapSite> place_femtocells(int n, double macro_radius, Rng& rng, const FemtoLayout& layout = {});

/// Poisson draw; throws std::invalid_argument for a negative mean.
int sample_neighbor_count(double mean, Rng& rng);

/// Edge iff Euclidean distance <= threshold (inclusive).
NeighborGraph neighbor_graph(std::span<const FapSite> faps, double threshold);

/// Walls between two distinct FAPs; throws std::invalid_argument when a == b.
int wall_count(int fap_a, int fap_b, int walls_between_femtocells = 1);
/// Walls between a femto UE served by `serving_fap` and FAP `fap`: zero for the serving FAP.
int ue_wall_count(int serving_fap, int fap, int walls_between_femtocells = 1);

/// Places the reference UE `ue_distance` from FAP 0 in a random direction.
Point place_reference_ue(Point fap, double ue_distance, Rng& rng);

}  // namespace femto
