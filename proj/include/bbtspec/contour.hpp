#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bbtspec/grid.hpp"

namespace bbt {

/// Values on a rectilinear node grid; values[j * nx + i] at (xs[i], ys[j]).
struct ScalarField {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;  // 1 = invalid node

    int nx() const { return static_cast<int>(xs.size()); }
    int ny() const { return static_cast<int>(ys.size()); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * xs.size() + i; }
    double value(int i, int j) const { return values[index(i, j)]; }
    bool masked(int i, int j) const { return mask[index(i, j)] != 0; }
};

/// How an open polyline ends.
enum class EndKind : std::uint8_t { None, Boundary, Mask, Axis };

/// One marching-squares chain. Open chains start and end on a crossing
/// edge that has a single active neighbour cell.
struct Chain {
    std::vector<cplx> points;
    bool closed = false;
    EndKind start = EndKind::None;
    EndKind finish = EndKind::None;
};

/// Zero-level chains of the field: linear interpolation along edges,
/// saddles decided by `center` at the cell centre (corner mean when empty).
/// A cell is active when none of its corners is masked. With
/// bottom_is_axis, open ends on the bottom row are tagged Axis.
std::vector<Chain> march(const ScalarField& f, const std::function<double(cplx)>& center = {},
                         bool bottom_is_axis = false);

struct Component {
    std::vector<cplx> points;  // closed: first == last
    bool closed = false;
    bool simple = true;
    bool reliable = true;
    bool unresolved = false;     // closed, shorter than 8 cells
    bool origin_hairpin = false; // nearest point to 0 is a hairpin with both arms running outward
    std::optional<int> winding;  // about the origin, closed components only
    double length = 0;
    EndKind start = EndKind::None;
    EndKind finish = EndKind::None;
};

struct ContourSet {
    Box box;
    double cell = 0;        // grid spacing used for the reliability margins
    double mask_radius = 0; // radius of the masked disk around 0
    std::vector<Component> components;
};

/// Fills closed/simple/reliable/winding/length and sorts components by
/// (length descending, first point lexicographic). Unreliable: open, near
/// the mask or box edge, unresolved, or (when a mask is set) an origin
/// hairpin, i.e. two arcs converging on 0 that the grid joined short of it.
void finalize(ContourSet& cs);

/// Marching squares on a field, assembled into a ContourSet.
ContourSet trace_contours(const ScalarField& f, const std::function<double(cplx)>& center = {}, double mask_radius = 0.0);

/// Signed angle sum / 2 pi about `base`. Throws InputError when the base is
/// within 1e-12 of the polyline or the sum is off an integer by > 1e-6.
int winding_number(const std::vector<cplx>& closed_polyline, cplx base);

/// No two non-adjacent segments intersect (touching counts).
bool is_simple(const std::vector<cplx>& polyline, bool closed);

double arc_length(const std::vector<cplx>& polyline);

struct OvalCensus {
    int enclosing = 0;
    int non_enclosing = 0;
    int open_or_unreliable = 0;
};

OvalCensus oval_census(const ContourSet& cs);

}  // namespace bbt
