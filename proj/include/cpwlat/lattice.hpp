#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpwlat/errors.hpp"

namespace cpwlat::lattice {

/// Marker for a resonator end that is not attached to any coupler
/// (terminated port, modeled as zero coupling).
constexpr int kTerminated = -1;

/// Undirected multigraph; self-loops are rejected, parallel edges allowed.
struct RootGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// One CPW resonator. Each of the two ends either joins a coupler or is
/// terminated. End 0/1 distinguishes the two mode-function antinodes, which
/// fixes hopping signs for antisymmetric harmonics.
struct ResonatorSite {
    int id = 0;
    std::array<int, 2> coupler_of_end{kTerminated, kTerminated};
};

struct CouplerMember {
    int site = 0;
    int end = 0; // 0 or 1
};

/// Capacitive junction joining 2 or 3 resonator ends.
struct Coupler {
    int id = 0;
    std::vector<CouplerMember> members;
};

enum class Boundary { periodic, hardwall };

struct LatticeGraph {
    std::vector<ResonatorSite> sites;
    std::vector<Coupler> couplers;
    std::vector<int> cell_index; // one entry per site
    Boundary boundary = Boundary::hardwall;

    int n_sites() const { return static_cast<int>(sites.size()); }
};

struct CellMember {
    int site = 0;        // cell-local site index
    int end = 0;         // 0 or 1
    int cell_offset = 0; // 0 or +1
};

struct CellCoupler {
    std::vector<CellMember> members;

    bool is_inter_cell() const {
        for (const auto& m : members)
            if (m.cell_offset != 0) return true;
        return false;
    }
};

/// Translation-invariant description of one unit cell of a quasi-1D chain.
/// Couplers whose members all carry offset 0 are intra-cell; couplers that
/// reference offset +1 straddle consecutive cells.
struct UnitCellSpec {
    int sites_per_cell = 0;
    std::vector<CellCoupler> intra_couplers;
    std::vector<CellCoupler> inter_couplers;
    std::vector<std::string> site_tags; // empty, or one tag per site

    int n_couplers() const {
        return static_cast<int>(intra_couplers.size() + inter_couplers.size());
    }
};

struct Diagnostic {
    std::string kind;
    std::string detail;
};

/// Line graph L(G): one site per root edge, one coupler per root vertex of
/// degree >= 2. End 0 of a site is oriented toward the smaller root vertex id.
/// Root vertices of degree > 3 are rejected (couplers are at most 3-way).
LatticeGraph line_graph(const RootGraph& root);

/// Instantiate n_cells copies of a unit cell. Inter-cell couplers wrap
/// around under periodic boundary; under hardwall they are instantiated only
/// between consecutive cells and the remaining dangling ports stay terminated.
LatticeGraph build_chain(const UnitCellSpec& cell, int n_cells, Boundary boundary);

/// The bundled quasi-1D cell: six resonators per cell arranged as the line
/// graph of a rhombus-with-diagonal root (vertices {L,T,B,R}, edges
/// {LT, LB, TB, TR, BR} plus R-L' into the next cell; 3-regular).
/// Sites 2 (TB) and 5 (RL) lie on the mirror axis of the chain.
UnitCellSpec quasi1d_cell();

std::vector<Diagnostic> validate(const LatticeGraph& lat);
std::vector<Diagnostic> validate(const UnitCellSpec& cell);

/// Neighbor lists including multiplicity (two sites joined through two
/// distinct couplers appear twice).
std::vector<std::vector<int>> adjacency(const LatticeGraph& lat);

bool is_connected(const LatticeGraph& lat);

UnitCellSpec cell_from_json(const nlohmann::json& j);
nlohmann::json cell_to_json(const UnitCellSpec& cell);

} // namespace cpwlat::lattice
