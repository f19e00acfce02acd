#include "friedrichs/quadrature.hpp"

#include "friedrichs/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace friedrichs {

std::vector<Segment> aligned_segments(int cells) {
    if (cells < 0 || cells > kMaxDyadicIndex) throw std::domain_error("aligned_segments: cells outside [0, 50]");
    std::vector<Segment> out;
    out.reserve(static_cast<std::size_t>(4 * cells + 1));
    for (int k = 1; k <= cells; ++k) {
        const DyadicCell c = dyadic_cell(k);
        out.push_back({c.begin, c.rise_end, 2});
        out.push_back({c.rise_end, c.middle, 1});
        out.push_back({c.middle, c.fall_begin, 1});
        out.push_back({c.fall_begin, c.end, 2});
    }
    out.push_back({breakpoint(cells + 1), 1.0, 6});
    return out;
}

QuadratureGrid trapezoid_grid(int cells, int max_nodes) {
    const int m = (max_nodes - 1) / (6 * (cells + 1));
    if (m < 3) {
        throw ConfigurationError("grid of " + std::to_string(max_nodes) + " nodes cannot align " +
                                 std::to_string(cells) + " dyadic cells with >= 4 nodes per linear piece");
    }
    QuadratureGrid grid;
    grid.panels_per_sixth = m;
    grid.cells = cells;
    const auto segments = aligned_segments(cells);
    grid.nodes.push_back(0.0);
    grid.weights.push_back(0.0);
    for (const auto& seg : segments) {
        const int panels = seg.weight * m;
        const double step = (seg.end - seg.begin) / panels;
        grid.weights.back() += step / 2.0;
        for (int j = 1; j <= panels; ++j) {
            grid.nodes.push_back(j == panels ? seg.end : seg.begin + j * step);
            grid.weights.push_back(j == panels ? step / 2.0 : step);
        }
    }
    return grid;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("simpson: panel count must be even and >= 2");
    if (b <= a) return 0.0;
    const double step = (b - a) / panels;
    double odd = 0.0;
    double even = 0.0;
    for (int j = 1; j < panels; ++j) {
        const double x = a + j * step;
        (j % 2 == 1 ? odd : even) += f(x);
    }
    return step / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

double integrate_aligned(const std::function<double(double)>& f, int cells, double lo, double hi, int panels) {
    if (hi <= lo) return 0.0;
    double total = 0.0;
    for (const auto& seg : aligned_segments(cells)) {
        const double a = std::max(seg.begin, lo);
        const double b = std::min(seg.end, hi);
        if (b > a) total += simpson(f, a, b, panels);
    }
    return total;
}

std::pair<double, double> basis_support(BasisFamily family, int n) {
    const DyadicCell c = dyadic_cell(n);
    if (family == BasisFamily::TentHats) return {c.rise_end, c.fall_begin};
    return {c.begin, c.end};
}

}  // namespace friedrichs
