#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <initializer_list>

#include "femto/schemes.hpp"

using namespace femto;

namespace {

const Band kTotal{0, 30000};

// FAP 0 is the newcomer; FAPs 1..n hold `slots`, all under the band-1 host.
struct Fixture {
    Deployment dep;
    NeighborGraph graph;
    AllocationPlan plan;

    Fixture(std::initializer_list<EdgeSlot> slots, bool interferers_adjacent = true) {
        const int n = static_cast<int>(slots.size()) + 1;
        dep.macrocells = build_cluster(1000.0);
        dep.faps.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) dep.faps[static_cast<std::size_t>(i)].id = i;
        graph = NeighborGraph(static_cast<std::size_t>(n));
        for (int i = 1; i < n; ++i) {
            graph.add_edge(0, i);
            if (interferers_adjacent) {
                for (int j = 1; j < i; ++j) graph.add_edge(i, j);
            }
        }
        plan = allocate_dynamic_base(kTotal, dep);
        int id = 1;
        for (EdgeSlot s : slots) apply_install(plan, id++, InstallDecision{false, s, {}, {}});
    }

    EdgeSlot slot(int id) const { return plan.assignment(id).edge_slot; }
};

// Pairwise edge-band disjointness across every interference edge.
bool conflict_free(const AllocationPlan& plan, const NeighborGraph& g) {
    for (std::size_t a = 0; a < g.size(); ++a) {
        if (!plan.has_fap(static_cast<int>(a))) continue;
        for (int b : g.neighbors(static_cast<int>(a))) {
            if (!plan.has_fap(b)) continue;
            if (plan.edge_third(static_cast<int>(a)) != plan.edge_third(b)) continue;
            if (overlaps(plan.assignment(static_cast<int>(a)).edge_band, plan.assignment(b).edge_band)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("no interferer: whole edge third") {
    Fixture f({});
    const InstallDecision d = dynamic_install(0, f.plan, f.graph);
    CHECK_FALSE(d.resize_required);
    CHECK(d.edge == EdgeSlot::Full);
    apply_install(f.plan, 0, d);
    CHECK(f.plan.assignment(0).center_band == BandSet(f.plan.thirds[1]));
    CHECK(f.plan.assignment(0).edge_band == BandSet(f.plan.thirds[2]));
}

TEST_CASE("one interferer: cyclic successor rules") {
    const std::pair<EdgeSlot, EdgeSlot> rules[] = {
        {EdgeSlot::B5, EdgeSlot::B4}, {EdgeSlot::B4, EdgeSlot::B5}, {EdgeSlot::B1, EdgeSlot::B2},
        {EdgeSlot::B2, EdgeSlot::B3}, {EdgeSlot::B3, EdgeSlot::B1},
    };
    for (auto [held, expect] : rules) {
        CAPTURE(slot_name(held));
        Fixture f({held});
        const InstallDecision d = dynamic_install(0, f.plan, f.graph);
        CHECK_FALSE(d.resize_required);
        CHECK(d.interferers == std::vector<int>{1});
        CHECK(d.edge == expect);
        CHECK(d.demotions.empty());
        apply_install(f.plan, 0, d);
        CHECK(f.plan.assignment(0).center_band == BandSet(f.plan.thirds[1]));
        CHECK(conflict_free(f.plan, f.graph));
        CHECK(check_plan(f.plan).empty());
    }
}

TEST_CASE("one interferer holding the whole third is split into halves") {
    Fixture f({EdgeSlot::Full});
    const InstallDecision d = dynamic_install(0, f.plan, f.graph);
    CHECK(d.edge == EdgeSlot::B5);
    REQUIRE(d.demotions.size() == 1);
    CHECK(d.demotions[0] == std::pair<int, EdgeSlot>{1, EdgeSlot::B4});
    apply_install(f.plan, 0, d);
    CHECK(f.slot(1) == EdgeSlot::B4);
    CHECK(conflict_free(f.plan, f.graph));
}

TEST_CASE("two interferers on halves: newcomer takes B3, holders move to B1 and B2") {
    Fixture f({EdgeSlot::B4, EdgeSlot::B5});
    const InstallDecision d = dynamic_install(0, f.plan, f.graph);
    CHECK_FALSE(d.resize_required);
    CHECK(d.edge == EdgeSlot::B3);
    apply_install(f.plan, 0, d);
    CHECK(f.slot(1) == EdgeSlot::B1);
    CHECK(f.slot(2) == EdgeSlot::B2);
    CHECK(conflict_free(f.plan, f.graph));
    CHECK(check_plan(f.plan).empty());
}

TEST_CASE("two interferers on thirds: the unused third") {
    const std::tuple<EdgeSlot, EdgeSlot, EdgeSlot> cases[] = {
        {EdgeSlot::B1, EdgeSlot::B2, EdgeSlot::B3},
        {EdgeSlot::B2, EdgeSlot::B3, EdgeSlot::B1},
        {EdgeSlot::B3, EdgeSlot::B1, EdgeSlot::B2},
    };
    for (auto [a, b, expect] : cases) {
        Fixture f({a, b});
        const InstallDecision d = dynamic_install(0, f.plan, f.graph);
        CHECK(d.edge == expect);
        CHECK(d.demotions.empty());
    }
}

TEST_CASE("three interferers: the unused third, or resize") {
    // 1 and 2 are not neighbors of each other and share B1
    Fixture sparse({EdgeSlot::B1, EdgeSlot::B1, EdgeSlot::B2}, false);
    const InstallDecision d = dynamic_install(0, sparse.plan, sparse.graph);
    CHECK_FALSE(d.resize_required);
    CHECK(d.edge == EdgeSlot::B3);

    Fixture full({EdgeSlot::B1, EdgeSlot::B2, EdgeSlot::B3});
    const InstallDecision r = dynamic_install(0, full.plan, full.graph);
    CHECK(r.resize_required);
    CHECK(r.interferers == std::vector<int>{1, 2, 3});

    Fixture four({EdgeSlot::B4, EdgeSlot::B5, EdgeSlot::B4, EdgeSlot::B5}, false);
    CHECK(dynamic_install(0, four.plan, four.graph).resize_required);
}

TEST_CASE("interferers under another host are ignored") {
    Fixture f({EdgeSlot::B4});
    f.dep.faps[1].host_macrocell = 1;  // band-2 host: edge third is B_m1
    f.plan = allocate_dynamic_base(kTotal, f.dep);
    apply_install(f.plan, 1, InstallDecision{false, EdgeSlot::Full, {}, {}});
    const InstallDecision d = dynamic_install(0, f.plan, f.graph);
    CHECK(d.interferers.empty());
    CHECK(d.edge == EdgeSlot::Full);
}

TEST_CASE("install is deterministic and a fixed point after sequential installs") {
    Rng rng(41);
    Deployment dep;
    dep.macrocells = build_cluster(1000.0);
    dep.faps = place_femtocells(600, 300.0, rng);
    SonConfig cfg;
    DynamicReuseEngine engine(dep, kTotal, cfg);
    engine.install_all();
    const AllocationPlan& plan = engine.plan();
    CHECK(check_plan(plan).empty());

    // edges with at most 3 interferers and no unresolved flag are conflict-free
    const auto unresolved = engine.unresolved();
    for (std::size_t a = 0; a < plan.faps.size(); ++a) {
        for (int b : engine.interference().neighbors(static_cast<int>(a))) {
            if (std::find(unresolved.begin(), unresolved.end(), static_cast<int>(a)) != unresolved.end()) continue;
            if (std::find(unresolved.begin(), unresolved.end(), b) != unresolved.end()) continue;
            CHECK_FALSE(overlaps(plan.assignment(static_cast<int>(a)).edge_band, plan.assignment(b).edge_band));
        }
    }

    DynamicReuseEngine again(dep, kTotal, cfg);
    again.install_all();
    CHECK(dump_plan(again.plan()) == dump_plan(plan));
}

TEST_CASE("removal") {
    SonConfig cfg;
    Deployment dep;
    dep.macrocells = build_cluster(1000.0);
    dep.faps.resize(3);
    for (int i = 0; i < 3; ++i) {
        dep.faps[static_cast<std::size_t>(i)].id = i;
        dep.faps[static_cast<std::size_t>(i)].position = {200.0 + 10.0 * i, 0.0};
    }

    SUBCASE("three mutual neighbors on thirds; removing one lets survivors take halves") {
        DynamicReuseEngine e(dep, kTotal, cfg);
        e.install_all();
        CHECK(e.plan().assignment(0).edge_slot == EdgeSlot::B1);
        CHECK(e.plan().assignment(1).edge_slot == EdgeSlot::B2);
        CHECK(e.plan().assignment(2).edge_slot == EdgeSlot::B3);
        e.remove(2);
        CHECK_FALSE(e.plan().has_fap(2));
        CHECK(e.plan().assignment(0).edge_slot == EdgeSlot::B4);
        CHECK(e.plan().assignment(1).edge_slot == EdgeSlot::B5);

        // oracle: replaying installs on the survivors alone gives the same plan
        Deployment two = dep;
        two.faps.pop_back();
        DynamicReuseEngine replay(two, kTotal, cfg);
        replay.install_all();
        CHECK(replay.plan().assignment(0).edge_band == e.plan().assignment(0).edge_band);
        CHECK(replay.plan().assignment(1).edge_band == e.plan().assignment(1).edge_band);

        // functional form agrees
        DynamicReuseEngine f(dep, kTotal, cfg);
        f.install_all();
        const AllocationPlan after = dynamic_remove(2, f.plan(), f.interference());
        CHECK(dump_plan(after) == dump_plan(e.plan()));
    }

    SUBCASE("remove the only FAP") {
        Deployment one = dep;
        one.faps.resize(1);
        DynamicReuseEngine e(one, kTotal, cfg);
        e.install_all();
        e.remove(0);
        CHECK_FALSE(e.plan().has_fap(0));
        CHECK(dump_plan(e.plan()) == "# scheme dynamic\n# id host center_khz edge_khz\n");
    }

    SUBCASE("remove an isolated FAP") {
        Deployment far = dep;
        far.faps.push_back(FapSite{3, {800.0, 0.0}});
        DynamicReuseEngine e(far, kTotal, cfg);
        e.install_all();
        const std::string before = dump_plan(e.plan());
        e.remove(3);
        std::string expect = before.substr(0, before.rfind("3 0"));
        CHECK(dump_plan(e.plan()) == expect);
    }

    SUBCASE("unknown id") {
        DynamicReuseEngine e(dep, kTotal, cfg);
        CHECK_THROWS_AS(e.remove(1), std::out_of_range);
        e.install_all();
        CHECK_THROWS_AS(e.remove(9), std::out_of_range);
        CHECK_THROWS_AS(dynamic_remove(9, e.plan(), e.interference()), std::out_of_range);
    }
}

TEST_CASE("resize arithmetic") {
    SonConfig cfg;
    Deployment dep;
    dep.faps.resize(2);
    dep.faps[1].id = 1;
    dep.faps[1].position = {55.0, 0.0};
    NeighborGraph g = interference_graph(dep.faps, cfg);
    CHECK(g.has_edge(0, 1));

    const ResizeOutcome none = resize_cells({}, dep, g, cfg);
    CHECK(none.shrunk.empty());
    CHECK(g.has_edge(0, 1));

    const std::vector<int> both{0, 1};
    resize_cells(both, dep, g, cfg);
    CHECK(dep.faps[0].cell_radius == doctest::Approx(8.0));
    CHECK(dep.faps[0].inner_radius == doctest::Approx(4.0));
    CHECK_FALSE(g.has_edge(0, 1));  // 55 m > 60 * 16 / 20

    for (int k = 0; k < 10; ++k) resize_cells(both, dep, g, cfg);
    CHECK(dep.faps[1].cell_radius == doctest::Approx(4.0));
    CHECK(resize_cells(both, dep, g, cfg).at_floor);
}

TEST_CASE("four mutually overlapping FAPs resolve by shrinking") {
    SonConfig cfg;
    Deployment dep;
    dep.macrocells = build_cluster(1000.0);
    const Point corners[] = {{0, 0}, {40, 0}, {0, 40}, {40, 40}};
    for (int i = 0; i < 4; ++i) dep.faps.push_back(FapSite{i, corners[i]});

    DynamicReuseEngine e(dep, kTotal, cfg);
    for (int i = 0; i < 3; ++i) CHECK(e.install(i).resize_rounds == 0);
    const InstallReport r = e.install(3);
    CHECK(r.resize_rounds >= 1);
    CHECK_FALSE(r.unresolved);

    // geometric overlap oracle on the resized cells
    const auto& faps = e.deployment().faps;
    for (int a = 0; a < 4; ++a) {
        int overlapping = 0;
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            const double reach = cfg.neighbor_threshold * (faps[static_cast<std::size_t>(a)].cell_radius +
                                                           faps[static_cast<std::size_t>(b)].cell_radius) /
                                 (2.0 * cfg.nominal_radius);
            const bool geo = distance(faps[static_cast<std::size_t>(a)].position,
                                      faps[static_cast<std::size_t>(b)].position) <= reach;
            CHECK(geo == e.interference().has_edge(a, b));
            if (geo) {
                ++overlapping;
                CHECK_FALSE(overlaps(e.plan().assignment(a).edge_band, e.plan().assignment(b).edge_band));
            }
        }
        CHECK(overlapping <= 3);
    }
    CHECK(faps[3].cell_radius < 10.0);
    CHECK(faps[0].cell_radius < 10.0);
}

TEST_CASE("conflict that survives the radius floor is reported") {
    SonConfig cfg;
    Deployment dep;
    dep.macrocells = build_cluster(1000.0);
    // five FAPs within 1 m of each other: no shrink separates them
    for (int i = 0; i < 5; ++i) dep.faps.push_back(FapSite{i, {0.2 * i, 0.0}});
    DynamicReuseEngine e(dep, kTotal, cfg);
    e.install_all();
    const auto bad = e.unresolved();
    CHECK_FALSE(bad.empty());
    for (int id : bad) CHECK(e.deployment().faps[static_cast<std::size_t>(id)].cell_radius == doctest::Approx(4.0));
    CHECK(check_plan(e.plan()).empty());
}
