#include "femto/deployment.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace femto {

bool NeighborGraph::has_edge(int a, int b) const {
    const auto& na = neighbors(a);
    return std::binary_search(na.begin(), na.end(), b);
}

std::size_t NeighborGraph::edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& n : adj_) twice += n.size();
    return twice / 2;
}

namespace {

void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

void NeighborGraph::add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("NeighborGraph: self edge on node " + std::to_string(a));
    insert_sorted(adj_.at(static_cast<std::size_t>(a)), b);
    insert_sorted(adj_.at(static_cast<std::size_t>(b)), a);
}

void NeighborGraph::remove_edge(int a, int b) {
    erase_sorted(adj_.at(static_cast<std::size_t>(a)), b);
    erase_sorted(adj_.at(static_cast<std::size_t>(b)), a);
}

void NeighborGraph::isolate(int id) {
    const std::vector<int> nbrs = neighbors(id);
    for (int n : nbrs) remove_edge(id, n);
}

std::vector<MacrocellSite> build_cluster(double macro_radius, std::array<int, 6> tier_bands, double tx_power_w) {
    if (!(macro_radius > 0.0)) throw std::invalid_argument("build_cluster: macro_radius must be positive");
    for (int b : tier_bands) {
        if (b < 1 || b > 3) throw std::invalid_argument("build_cluster: tier band indices must be 1, 2 or 3");
    }
    std::vector<MacrocellSite> sites;
    sites.reserve(7);
    sites.push_back({0, {0.0, 0.0}, macro_radius, 1, tx_power_w});
    const double ring = std::numbers::sqrt3 * macro_radius;
    for (int k = 0; k < 6; ++k) {
        const double angle = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
        sites.push_back({k + 1, {ring * std::cos(angle), ring * std::sin(angle)}, macro_radius,
                         tier_bands[static_cast<std::size_t>(k)], tx_power_w});
    }
    return sites;
}

std::vector<FapSite> place_femtocells(int n, double macro_radius, Rng& rng, const FemtoLayout& layout) {
    if (n < 0) throw std::invalid_argument("place_femtocells: negative femtocell count");
    if (!(macro_radius > 0.0)) throw std::invalid_argument("place_femtocells: macro_radius must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const double inner = layout.inner_fraction * layout.cell_radius;

    std::vector<FapSite> faps;
    faps.reserve(static_cast<std::size_t>(n) + 1);
    const double ref_angle = two_pi * unit(rng);
    faps.push_back({0,
                    {layout.reference_distance * std::cos(ref_angle), layout.reference_distance * std::sin(ref_angle)},
                    layout.cell_radius, inner, 0, layout.tx_power_w});
    for (int i = 1; i <= n; ++i) {
        const double r = macro_radius * std::sqrt(unit(rng));
        const double a = two_pi * unit(rng);
        faps.push_back({i, {r * std::cos(a), r * std::sin(a)}, layout.cell_radius, inner, 0, layout.tx_power_w});
    }
    return faps;
}

int sample_neighbor_count(double mean, Rng& rng) {
    if (!(mean >= 0.0)) throw std::invalid_argument("sample_neighbor_count: mean must be non-negative");
    if (mean == 0.0) return 0;
    std::poisson_distribution<int> poisson(mean);
    return poisson(rng);
}

NeighborGraph neighbor_graph(std::span<const FapSite> faps, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("neighbor_graph: threshold must be positive");
    NeighborGraph g(faps.size());
    if (faps.empty()) return g;

    // uniform grid with cell size == threshold; only the 3x3 block can hold neighbors
    auto cell_of = [threshold](Point p) {
        return std::pair<long long, long long>{static_cast<long long>(std::floor(p.x / threshold)),
                                               static_cast<long long>(std::floor(p.y / threshold))};
    };
    auto key = [](long long cx, long long cy) { return (cx << 32) ^ (cy & 0xffffffffLL); };
    std::unordered_map<long long, std::vector<int>> grid;
    grid.reserve(faps.size());
    for (std::size_t i = 0; i < faps.size(); ++i) {
        const auto [cx, cy] = cell_of(faps[i].position);
        grid[key(cx, cy)].push_back(static_cast<int>(i));
    }

    std::vector<std::vector<int>> adj(faps.size());
    for (std::size_t i = 0; i < faps.size(); ++i) {
        const auto [cx, cy] = cell_of(faps[i].position);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(key(cx + dx, cy + dy));
                if (it == grid.end()) continue;
                for (int j : it->second) {
                    if (j == static_cast<int>(i)) continue;
                    if (distance(faps[i].position, faps[static_cast<std::size_t>(j)].position) <= threshold) {
                        adj[i].push_back(j);
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < adj.size(); ++i) {
        std::sort(adj[i].begin(), adj[i].end());
        for (int j : adj[i]) {
            if (j > static_cast<int>(i)) g.add_edge(static_cast<int>(i), j);
        }
    }
    return g;
}

int wall_count(int fap_a, int fap_b, int walls_between_femtocells) {
    if (fap_a == fap_b) {
        throw std::invalid_argument("wall_count: reflexive query for FAP " + std::to_string(fap_a));
    }
    return walls_between_femtocells;
}

int ue_wall_count(int serving_fap, int fap, int walls_between_femtocells) {
    return serving_fap == fap ? 0 : walls_between_femtocells;
}

Point place_reference_ue(Point fap, double ue_distance, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = 2.0 * std::numbers::pi * unit(rng);
    return {fap.x + ue_distance * std::cos(a), fap.y + ue_distance * std::sin(a)};
}

}  // namespace femto
