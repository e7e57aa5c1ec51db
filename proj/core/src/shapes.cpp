#include "fracp/shapes.hpp"

#include <cmath>
#include <random>

namespace fracp {

namespace {
double normalized(const Grid& g, double x) { return (2.0 * x - g.a - g.b) / (g.b - g.a); }
}  // namespace

DiscreteFunction bump(const Grid& g) {
    DiscreteFunction u = zero_function(g);
    for (int i = 0; i < g.n; ++i) {
        const double xi = normalized(g, g.node(i));
        const double t = 1.0 - xi * xi;
        u.values[static_cast<std::size_t>(i)] = t * t;
    }
    return u;
}

DiscreteFunction lobed_seed(const Grid& g, int lobes) {
    DiscreteFunction u = zero_function(g);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < g.n; ++i) {
        const double xi = normalized(g, g.node(i));
        u.values[static_cast<std::size_t>(i)] =
            (1.0 - xi * xi) * std::sin(lobes * pi * (xi + 1.0) / 2.0);
    }
    return u;
}

DiscreteFunction smooth_bump(const Grid& g, double center, double width) {
    DiscreteFunction u = zero_function(g);
    for (int i = 0; i < g.n; ++i) {
        const double t = (g.node(i) - center) / width;
        if (std::fabs(t) < 1.0)
            u.values[static_cast<std::size_t>(i)] = std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    return u;
}

std::vector<DiscreteFunction> bump_family(const Grid& g, int count) {
    std::vector<DiscreteFunction> family;
    family.reserve(static_cast<std::size_t>(count));
    const double len = g.length();
    const double golden = 0.6180339887498949;
    double frac = 0.0;
    for (int k = 0; k < count; ++k) {
        frac += golden;
        frac -= std::floor(frac);
        const double width = len * (0.05 + 0.13 * frac);
        const double lo = g.a + 0.02 * len + width;
        const double hi = g.b - 0.02 * len - width;
        const double center = lo + (hi - lo) * (count == 1 ? 0.5 : double(k) / (count - 1));
        family.push_back(smooth_bump(g, center, width));
    }
    return family;
}

DiscreteFunction random_function(const Grid& g, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DiscreteFunction u = zero_function(g);
    for (auto& v : u.values) v = dist(rng);
    return u;
}

}  // namespace fracp
