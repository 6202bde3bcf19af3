#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cpwlat/lattice.hpp"

using namespace cpwlat;
using namespace cpwlat::lattice;

namespace {

RootGraph cycle(int n) {
    RootGraph g;
    g.n_vertices = n;
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

int coupler_count(const LatticeGraph& lat) { return static_cast<int>(lat.couplers.size()); }

} // namespace

TEST_CASE("line graph of a triangle is a triangle") {
    const auto lat = line_graph(cycle(3));
    CHECK(lat.n_sites() == 3);
    CHECK(coupler_count(lat) == 3);
    for (const auto& c : lat.couplers) CHECK(c.members.size() == 2);
    const auto adj = adjacency(lat);
    for (const auto& nb : adj) CHECK(nb.size() == 2);
    CHECK(is_connected(lat));
    CHECK(validate(lat).empty());
}

TEST_CASE("line graph of a 3-vertex path is a single edge") {
    RootGraph g;
    g.n_vertices = 3;
    g.edges = {{0, 1}, {1, 2}};
    const auto lat = line_graph(g);
    CHECK(lat.n_sites() == 2);
    CHECK(coupler_count(lat) == 1);
    CHECK(lat.couplers.front().members.size() == 2);
    // path endpoints stay terminated
    CHECK(lat.sites[0].coupler_of_end[0] == kTerminated);
    CHECK(lat.sites[1].coupler_of_end[1] == kTerminated);
}

TEST_CASE("single honeycomb cell root gives kagome-like connectivity") {
    // one hexagonal-lattice unit cell on a torus: two vertices joined by
    // three parallel edges
    RootGraph g;
    g.n_vertices = 2;
    g.edges = {{0, 1}, {0, 1}, {0, 1}};
    const auto lat = line_graph(g);
    CHECK(lat.n_sites() == 3);
    CHECK(coupler_count(lat) == 2);
    for (const auto& c : lat.couplers) CHECK(c.members.size() == 3);
    const auto adj = adjacency(lat);
    for (const auto& nb : adj) CHECK(nb.size() == 4); // bulk kagome coordination
    CHECK(validate(lat).empty());
}

TEST_CASE("line graph neighbor count equals (deg(u)-1) + (deg(v)-1)") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        const int nv = 4 + static_cast<int>(rng() % 5);
        RootGraph g;
        g.n_vertices = nv;
        std::vector<int> degree(nv, 0);
        const int want_edges = 3 + static_cast<int>(rng() % 6);
        int guard = 0;
        while (static_cast<int>(g.edges.size()) < want_edges && ++guard < 200) {
            const int u = static_cast<int>(rng() % nv);
            const int v = static_cast<int>(rng() % nv);
            if (u == v || degree[u] >= 3 || degree[v] >= 3) continue;
            g.edges.push_back({u, v});
            ++degree[u];
            ++degree[v];
        }
        if (g.edges.empty()) continue;
        const auto lat = line_graph(g);
        const auto adj = adjacency(lat);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            const auto [u, v] = g.edges[e];
            CHECK(static_cast<int>(adj[e].size()) == (degree[u] - 1) + (degree[v] - 1));
        }
    }
}

TEST_CASE("line graph of a cycle is the same cycle") {
    for (int n = 3; n <= 8; ++n) {
        const auto lat = line_graph(cycle(n));
        CHECK(lat.n_sites() == n);
        const auto adj = adjacency(lat);
        for (const auto& nb : adj) CHECK(nb.size() == 2);
        CHECK(is_connected(lat));
    }
}

TEST_CASE("line graph rejects high-degree roots and empty graphs") {
    RootGraph g;
    g.n_vertices = 5;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    try {
        line_graph(g);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegreeTooHigh);
    }

    RootGraph empty;
    empty.n_vertices = 3;
    try {
        line_graph(empty);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyGraph);
    }

    RootGraph loop;
    loop.n_vertices = 1;
    loop.edges = {{0, 0}};
    CHECK_THROWS_AS(line_graph(loop), Error);
}

TEST_CASE("bundled cell shape") {
    const auto cell = quasi1d_cell();
    CHECK(cell.sites_per_cell == 6);
    CHECK(cell.intra_couplers.size() == 3);
    CHECK(cell.inter_couplers.size() == 1);
    for (const auto& c : cell.intra_couplers) CHECK(c.members.size() == 3);
    for (const auto& c : cell.inter_couplers) CHECK(c.members.size() == 3);
    CHECK(validate(cell).empty());

    int on_axis = 0;
    for (const auto& tag : cell.site_tags) on_axis += tag == "on-axis";
    CHECK(on_axis == 2);
}

TEST_CASE("9-cell hardwall chain has 54 sites and is connected") {
    const auto lat = build_chain(quasi1d_cell(), 9, Boundary::hardwall);
    CHECK(lat.n_sites() == 54);
    CHECK(is_connected(lat));
    CHECK(validate(lat).empty());
    CHECK(coupler_count(lat) == 9 * 3 + 8 * 1);
}

TEST_CASE("coupler counts: periodic n*(intra+inter), hardwall n*intra+(n-1)*inter") {
    const auto cell = quasi1d_cell();
    for (int n = 1; n <= 5; ++n) {
        if (n >= 2) { // a 1-cell periodic wrap would fold the inter coupler onto itself
            const auto per = build_chain(cell, n, Boundary::periodic);
            CHECK(coupler_count(per) == n * 4);
            CHECK(validate(per).empty());
        }
        const auto hw = build_chain(cell, n, Boundary::hardwall);
        CHECK(coupler_count(hw) == n * 3 + (n - 1));
        CHECK(validate(hw).empty());
    }
}

TEST_CASE("two-site cell, three hardwall cells: 6 sites, 5 active couplers") {
    UnitCellSpec cell;
    cell.sites_per_cell = 2;
    cell.intra_couplers = {{{{0, 1, 0}, {1, 0, 0}}}};
    cell.inter_couplers = {{{{1, 1, 0}, {0, 0, 1}}}};
    const auto lat = build_chain(cell, 3, Boundary::hardwall);
    CHECK(lat.n_sites() == 6);
    CHECK(coupler_count(lat) == 5);
    CHECK(is_connected(lat));
    CHECK(validate(lat).empty());
}

TEST_CASE("single-cell periodic chain wraps offset +1 couplers onto cell 0") {
    UnitCellSpec cell;
    cell.sites_per_cell = 2;
    cell.intra_couplers = {{{{0, 1, 0}, {1, 0, 0}}}};
    cell.inter_couplers = {{{{1, 1, 0}, {0, 0, 1}}}};
    const auto lat = build_chain(cell, 1, Boundary::periodic);
    CHECK(lat.n_sites() == 2);
    CHECK(coupler_count(lat) == 2);
    for (const auto& c : lat.couplers)
        for (const auto& m : c.members) CHECK(m.site < 2);
    CHECK(validate(lat).empty());
}

TEST_CASE("build_chain rejects invalid cells") {
    UnitCellSpec bad;
    bad.sites_per_cell = 2;
    // same end referenced by two couplers
    bad.intra_couplers = {{{{0, 0, 0}, {1, 0, 0}}}, {{{0, 0, 0}, {1, 1, 0}}}};
    try {
        build_chain(bad, 2, Boundary::hardwall);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidCell);
    }
}

TEST_CASE("validate flags oversized couplers and duplicate members") {
    auto lat = build_chain(quasi1d_cell(), 3, Boundary::hardwall);
    CHECK(validate(lat).empty());

    SUBCASE("four-member coupler") {
        lat.couplers[0].members.push_back({5, 0});
        bool found = false;
        for (const auto& d : validate(lat)) found |= d.kind == "DegreeTooHigh";
        CHECK(found);
    }
    SUBCASE("site listed twice in one coupler") {
        lat.couplers[0].members[1] = lat.couplers[0].members[0];
        bool found = false;
        for (const auto& d : validate(lat)) found |= d.kind == "DuplicateMember";
        CHECK(found);
    }
    SUBCASE("hardwall wrap") {
        // splice a coupler from the last cell back to the first
        Coupler wrap;
        wrap.id = static_cast<int>(lat.couplers.size());
        wrap.members = {{0, 0}, {17, 1}};
        lat.couplers.push_back(wrap);
        lat.sites[0].coupler_of_end[0] = wrap.id;
        lat.sites[17].coupler_of_end[1] = wrap.id;
        bool found = false;
        for (const auto& d : validate(lat)) found |= d.kind == "WrapUnderHardwall";
        CHECK(found);
    }
}

TEST_CASE("cell JSON round trip") {
    const auto cell = quasi1d_cell();
    const auto j = cell_to_json(cell);
    const auto back = cell_from_json(j);
    CHECK(back.sites_per_cell == cell.sites_per_cell);
    REQUIRE(back.intra_couplers.size() == cell.intra_couplers.size());
    REQUIRE(back.inter_couplers.size() == cell.inter_couplers.size());
    for (size_t c = 0; c < cell.intra_couplers.size(); ++c)
        for (size_t m = 0; m < cell.intra_couplers[c].members.size(); ++m) {
            CHECK(back.intra_couplers[c].members[m].site ==
                  cell.intra_couplers[c].members[m].site);
            CHECK(back.intra_couplers[c].members[m].end ==
                  cell.intra_couplers[c].members[m].end);
        }
    CHECK(back.site_tags == cell.site_tags);
}

TEST_CASE("bundled JSON asset matches the built-in cell") {
    std::ifstream in(std::string(CPWLAT_SOURCE_DIR) + "/assets/quasi1d_cell_v1.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const auto parsed = cell_from_json(nlohmann::json::parse(ss.str()));
    const auto cell = quasi1d_cell();
    CHECK(parsed.sites_per_cell == cell.sites_per_cell);
    CHECK(parsed.intra_couplers.size() == cell.intra_couplers.size());
    CHECK(parsed.inter_couplers.size() == cell.inter_couplers.size());
    CHECK(parsed.site_tags == cell.site_tags);
    CHECK(cell_to_json(parsed) == cell_to_json(cell));
}
