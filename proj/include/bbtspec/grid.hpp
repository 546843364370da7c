#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bbt {

using cplx = std::complex<double>;

struct Box {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool valid() const { return x1 > x0 && y1 > y0; }
    bool contains(cplx z) const { return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1; }
};

/// Parses "x0,x1,y0,y1".
Box parse_box(const std::string& text);

/// Node grid over a box: nx x ny nodes including the box corners.
struct Grid {
    Box box;
    int nx = 0;
    int ny = 0;

    /// res cells along the longer side; the shorter side gets the even cell
    /// count giving the most nearly square cells (at least 2).
    static Grid cells(const Box& b, int res);

    double dx() const { return box.width() / (nx - 1); }
    double dy() const { return box.height() / (ny - 1); }
    double cell_diagonal() const;
    double x(int i) const { return box.x0 + i * dx(); }
    double y(int j) const { return box.y0 + j * dy(); }
    cplx at(int i, int j) const { return {x(i), y(j)}; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

enum class Exec { Serial, Parallel };

/// Threads used by Exec::Parallel: BBTSPEC_THREADS if set and positive,
/// else the OpenMP default.
int thread_count();

/// out[index(i, j)] = fn(at(i, j)). The serial and parallel paths write
/// each entry independently, so results are identical.
std::vector<double> grid_map(const Grid& g, const std::function<double(cplx)>& fn, Exec exec = Exec::Parallel);

/// Same for an arbitrary list of points.
std::vector<double> point_map(const std::vector<cplx>& pts, const std::function<double(cplx)>& fn,
                              Exec exec = Exec::Parallel);

}  // namespace bbt
