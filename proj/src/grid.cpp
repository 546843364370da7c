#include "bbtspec/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <omp.h>

#include "bbtspec/errors.hpp"

namespace bbt {

Box parse_box(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<double> v;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError("bad box component '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(d)) throw InputError("bad box component '" + item + "'");
        v.push_back(d);
    }
    if (v.size() != 4) throw InputError("box needs four numbers x0,x1,y0,y1");
    Box b{v[0], v[1], v[2], v[3]};
    if (!b.valid()) throw InputError("box must satisfy x0 < x1 and y0 < y1");
    return b;
}

Grid Grid::cells(const Box& b, int res) {
    const double w = b.width(), h = b.height();
    auto shorter = [res](double ratio) {
        int c = 2 * static_cast<int>(std::lround(0.5 * res * ratio));
        return std::max(c, 2);
    };
    if (w >= h) return Grid{b, res + 1, shorter(h / w) + 1};
    return Grid{b, shorter(w / h) + 1, res + 1};
}

double Grid::cell_diagonal() const { return std::hypot(dx(), dy()); }

int thread_count() {
    if (const char* env = std::getenv("BBTSPEC_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    }
    return omp_get_max_threads();
}

std::vector<double> point_map(const std::vector<cplx>& pts, const std::function<double(cplx)>& fn, Exec exec) {
    std::vector<double> out(pts.size());
    const long n = static_cast<long>(pts.size());
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(pts[static_cast<std::size_t>(i)]);
        return out;
    }
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(pts[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> grid_map(const Grid& g, const std::function<double(cplx)>& fn, Exec exec) {
    std::vector<double> out(g.size());
    const long n = static_cast<long>(g.size());
    auto eval = [&](long idx) {
        const int i = static_cast<int>(idx % g.nx);
        const int j = static_cast<int>(idx / g.nx);
        out[static_cast<std::size_t>(idx)] = fn(g.at(i, j));
    };
    if (exec == Exec::Serial) {
        for (long idx = 0; idx < n; ++idx) eval(idx);
        return out;
    }
#pragma omp parallel for schedule(dynamic, 256) num_threads(thread_count())
    for (long idx = 0; idx < n; ++idx) eval(idx);
    return out;
}

}  // namespace bbt
