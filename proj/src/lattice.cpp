#include "cpwlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cpwlat::lattice {

LatticeGraph line_graph(const RootGraph& root) {
    if (root.edges.empty()) fail(Errc::EmptyGraph, "root graph has no edges");
    for (const auto& [u, v] : root.edges) {
        if (u < 0 || v < 0 || u >= root.n_vertices || v >= root.n_vertices)
            fail(Errc::InvalidLattice, "edge endpoint out of range");
        if (u == v) fail(Errc::InvalidLattice, "self-loops are not allowed");
    }

    // incident[v] = list of (edge index, end label at v)
    std::vector<std::vector<CouplerMember>> incident(root.n_vertices);
    for (int e = 0; e < static_cast<int>(root.edges.size()); ++e) {
        auto [u, v] = root.edges[e];
        const int lo = std::min(u, v), hi = std::max(u, v);
        incident[lo].push_back({e, 0});
        incident[hi].push_back({e, 1});
    }

    LatticeGraph lat;
    lat.boundary = Boundary::hardwall;
    lat.sites.resize(root.edges.size());
    lat.cell_index.assign(root.edges.size(), 0);
    for (int e = 0; e < static_cast<int>(root.edges.size()); ++e) lat.sites[e].id = e;

    for (int v = 0; v < root.n_vertices; ++v) {
        const auto deg = static_cast<int>(incident[v].size());
        if (deg > 3)
            fail(Errc::DegreeTooHigh,
                 "root vertex " + std::to_string(v) + " has degree " + std::to_string(deg));
        if (deg < 2) continue; // degree-1 vertex: terminated end, no coupler
        Coupler c;
        c.id = static_cast<int>(lat.couplers.size());
        c.members = incident[v];
        for (const auto& m : c.members) lat.sites[m.site].coupler_of_end[m.end] = c.id;
        lat.couplers.push_back(std::move(c));
    }
    return lat;
}

static void check_cell(const UnitCellSpec& cell) {
    auto diags = validate(cell);
    if (!diags.empty())
        fail(Errc::InvalidCell, diags.front().kind + " (" + diags.front().detail + ")");
}

LatticeGraph build_chain(const UnitCellSpec& cell, int n_cells, Boundary boundary) {
    if (n_cells < 1) fail(Errc::InvalidCell, "n_cells must be >= 1");
    check_cell(cell);

    LatticeGraph lat;
    lat.boundary = boundary;
    const int n_sites = n_cells * cell.sites_per_cell;
    lat.sites.resize(n_sites);
    lat.cell_index.resize(n_sites);
    for (int c = 0; c < n_cells; ++c)
        for (int s = 0; s < cell.sites_per_cell; ++s) {
            const int g = c * cell.sites_per_cell + s;
            lat.sites[g].id = g;
            lat.cell_index[g] = c;
        }

    auto instantiate = [&](const CellCoupler& proto, int base_cell) {
        Coupler c;
        c.id = static_cast<int>(lat.couplers.size());
        for (const auto& m : proto.members) {
            int target = base_cell + m.cell_offset;
            if (boundary == Boundary::periodic) target = (target + n_cells) % n_cells;
            c.members.push_back({target * cell.sites_per_cell + m.site, m.end});
        }
        for (size_t a = 0; a < c.members.size(); ++a)
            for (size_t b = a + 1; b < c.members.size(); ++b)
                if (c.members[a].site == c.members[b].site)
                    fail(Errc::InvalidLattice,
                         "periodic wrap places one site twice in a coupler");
        for (const auto& m : c.members) lat.sites[m.site].coupler_of_end[m.end] = c.id;
        lat.couplers.push_back(std::move(c));
    };

    for (int c = 0; c < n_cells; ++c)
        for (const auto& proto : cell.intra_couplers) instantiate(proto, c);
    const int inter_span = (boundary == Boundary::periodic) ? n_cells : n_cells - 1;
    for (int c = 0; c < inter_span; ++c)
        for (const auto& proto : cell.inter_couplers) instantiate(proto, c);

    return lat;
}

UnitCellSpec quasi1d_cell() {
    // Sites: 0 LT, 1 LB, 2 TB, 3 TR, 4 BR, 5 RL. End 0 sits at the root
    // vertex listed first in the site name; RL spans into the next cell.
    UnitCellSpec cell;
    cell.sites_per_cell = 6;
    cell.site_tags = {"off-axis", "off-axis", "on-axis", "off-axis", "off-axis", "on-axis"};
    cell.intra_couplers = {
        {{{0, 1, 0}, {2, 0, 0}, {3, 0, 0}}}, // junction T
        {{{1, 1, 0}, {2, 1, 0}, {4, 0, 0}}}, // junction B
        {{{3, 1, 0}, {4, 1, 0}, {5, 0, 0}}}, // junction R
    };
    cell.inter_couplers = {
        {{{0, 0, 1}, {1, 0, 1}, {5, 1, 0}}}, // junction L of the next cell
    };
    return cell;
}

std::vector<Diagnostic> validate(const LatticeGraph& lat) {
    std::vector<Diagnostic> out;
    const int n = lat.n_sites();
    if (static_cast<int>(lat.cell_index.size()) != n)
        out.push_back({"CellIndexMismatch", "cell_index size differs from site count"});

    for (const auto& c : lat.couplers) {
        if (c.members.size() < 2 || c.members.size() > 3)
            out.push_back({"DegreeTooHigh",
                           "coupler " + std::to_string(c.id) + " has " +
                               std::to_string(c.members.size()) + " members"});
        std::set<int> seen;
        for (const auto& m : c.members) {
            if (m.site < 0 || m.site >= n) {
                out.push_back({"BadSiteRef", "coupler " + std::to_string(c.id)});
                continue;
            }
            if (m.end != 0 && m.end != 1)
                out.push_back({"BadEndLabel", "coupler " + std::to_string(c.id)});
            if (!seen.insert(m.site).second)
                out.push_back({"DuplicateMember",
                               "site " + std::to_string(m.site) + " twice in coupler " +
                                   std::to_string(c.id)});
        }
    }

    // site end records and coupler membership must agree
    std::map<std::pair<int, int>, int> membership; // (site, end) -> coupler
    for (const auto& c : lat.couplers)
        for (const auto& m : c.members) {
            auto [it, inserted] = membership.insert({{m.site, m.end}, c.id});
            if (!inserted)
                out.push_back({"EndInTwoCouplers",
                               "site " + std::to_string(m.site) + " end " +
                                   std::to_string(m.end)});
        }
    for (const auto& s : lat.sites)
        for (int e = 0; e < 2; ++e) {
            auto it = membership.find({s.id, e});
            const int recorded = s.coupler_of_end[e];
            const int actual = (it == membership.end()) ? kTerminated : it->second;
            if (recorded != actual)
                out.push_back({"InconsistentEndRecord",
                               "site " + std::to_string(s.id) + " end " + std::to_string(e)});
        }

    // no coupler may span from the last cell back to the first under hardwall;
    // with two cells the forward coupler legitimately touches both
    if (lat.boundary == Boundary::hardwall && !lat.cell_index.empty()) {
        const int last = *std::max_element(lat.cell_index.begin(), lat.cell_index.end());
        if (last > 1)
            for (const auto& c : lat.couplers) {
                bool has_first = false, has_last = false;
                for (const auto& m : c.members) {
                    has_first |= lat.cell_index[m.site] == 0;
                    has_last |= lat.cell_index[m.site] == last;
                }
                if (has_first && has_last)
                    out.push_back({"WrapUnderHardwall", "coupler " + std::to_string(c.id)});
            }
    }
    return out;
}

std::vector<Diagnostic> validate(const UnitCellSpec& cell) {
    std::vector<Diagnostic> out;
    if (cell.sites_per_cell < 1)
        out.push_back({"InvalidCell", "sites_per_cell must be >= 1"});
    if (!cell.site_tags.empty() &&
        static_cast<int>(cell.site_tags.size()) != cell.sites_per_cell)
        out.push_back({"InvalidCell", "site_tags size differs from sites_per_cell"});

    std::map<std::pair<int, int>, int> end_use; // (site, end) -> uses
    auto check_coupler = [&](const CellCoupler& c, bool inter_allowed) {
        if (c.members.size() < 2 || c.members.size() > 3)
            out.push_back({"DegreeTooHigh",
                           "coupler has " + std::to_string(c.members.size()) + " members"});
        for (const auto& m : c.members) {
            if (m.site < 0 || m.site >= cell.sites_per_cell)
                out.push_back({"BadSiteRef", "cell-local site " + std::to_string(m.site)});
            if (m.end != 0 && m.end != 1)
                out.push_back({"BadEndLabel", "site " + std::to_string(m.site)});
            if (m.cell_offset != 0 && m.cell_offset != 1)
                out.push_back({"BadCellOffset", "offset must be 0 or +1"});
            if (!inter_allowed && m.cell_offset != 0)
                out.push_back({"BadCellOffset", "intra-cell coupler carries an offset"});
            if (++end_use[{m.site, m.end}] > 1)
                out.push_back({"EndInTwoCouplers",
                               "site " + std::to_string(m.site) + " end " +
                                   std::to_string(m.end)});
        }
    };
    for (const auto& c : cell.intra_couplers) check_coupler(c, false);
    for (const auto& c : cell.inter_couplers) check_coupler(c, true);
    return out;
}

std::vector<std::vector<int>> adjacency(const LatticeGraph& lat) {
    std::vector<std::vector<int>> adj(lat.n_sites());
    for (const auto& c : lat.couplers)
        for (size_t a = 0; a < c.members.size(); ++a)
            for (size_t b = a + 1; b < c.members.size(); ++b) {
                adj[c.members[a].site].push_back(c.members[b].site);
                adj[c.members[b].site].push_back(c.members[a].site);
            }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

bool is_connected(const LatticeGraph& lat) {
    if (lat.n_sites() == 0) return true;
    const auto adj = adjacency(lat);
    std::vector<char> seen(lat.n_sites(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        for (int nb : adj[s])
            if (!seen[nb]) {
                seen[nb] = 1;
                ++count;
                stack.push_back(nb);
            }
    }
    return count == lat.n_sites();
}

UnitCellSpec cell_from_json(const nlohmann::json& j) {
    UnitCellSpec cell;
    try {
        cell.sites_per_cell = j.at("sites_per_cell").get<int>();
        for (const auto& jc : j.at("couplers")) {
            CellCoupler c;
            for (const auto& jm : jc.at("members"))
                c.members.push_back({jm.at("site").get<int>(), jm.at("end").get<int>(),
                                     jm.at("cell_offset").get<int>()});
            if (c.is_inter_cell())
                cell.inter_couplers.push_back(std::move(c));
            else
                cell.intra_couplers.push_back(std::move(c));
        }
        if (j.contains("tags") && j.at("tags").contains("site_tags"))
            cell.site_tags = j.at("tags").at("site_tags").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::InvalidCell, std::string("malformed cell JSON: ") + e.what());
    }
    auto diags = validate(cell);
    if (!diags.empty())
        fail(Errc::InvalidCell, diags.front().kind + " (" + diags.front().detail + ")");
    return cell;
}

nlohmann::json cell_to_json(const UnitCellSpec& cell) {
    nlohmann::json j;
    j["sites_per_cell"] = cell.sites_per_cell;
    j["couplers"] = nlohmann::json::array();
    auto dump = [&](const CellCoupler& c) {
        nlohmann::json jc;
        jc["members"] = nlohmann::json::array();
        for (const auto& m : c.members)
            jc["members"].push_back(
                {{"site", m.site}, {"end", m.end}, {"cell_offset", m.cell_offset}});
        j["couplers"].push_back(jc);
    };
    for (const auto& c : cell.intra_couplers) dump(c);
    for (const auto& c : cell.inter_couplers) dump(c);
    if (!cell.site_tags.empty()) j["tags"] = {{"site_tags", cell.site_tags}};
    return j;
}

} // namespace cpwlat::lattice
