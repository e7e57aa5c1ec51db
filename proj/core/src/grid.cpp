#include "fracp/grid.hpp"

#include "fracp/power.hpp"

namespace fracp {

Grid build_grid(double a, double b, int n) {
    if (!(b > a)) throw std::invalid_argument("build_grid: requires b > a");
    if (n < 3) throw std::invalid_argument("build_grid: requires n >= 3");
    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.h = (b - a) / n;
    return g;
}

DiscreteFunction zero_function(const Grid& g) {
    return DiscreteFunction{g, std::vector<double>(static_cast<std::size_t>(g.n), 0.0)};
}

double lp_norm(const DiscreteFunction& u, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: requires p >= 1");
    require_consistent(u, "lp_norm");
    double acc = 0.0;
    for (int i = 0; i < u.size(); ++i) acc += u.grid.weight(i) * pow_abs(u.values[i], p);
    return std::pow(acc, 1.0 / p);
}

double weighted_dot(const DiscreteFunction& u, const DiscreteFunction& v) {
    require_same_grid(u.grid, v.grid, "weighted_dot");
    require_consistent(u, "weighted_dot");
    require_consistent(v, "weighted_dot");
    double acc = 0.0;
    for (int i = 0; i < u.size(); ++i) acc += u.grid.weight(i) * u.values[i] * v.values[i];
    return acc;
}

DiscreteFunction reflect(const DiscreteFunction& u) {
    DiscreteFunction r = u;
    std::reverse(r.values.begin(), r.values.end());
    return r;
}

void require_same_grid(const Grid& ga, const Grid& gb, const char* where) {
    if (!(ga == gb)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

void require_consistent(const DiscreteFunction& u, const char* where) {
    if (u.size() != u.grid.n)
        throw std::invalid_argument(std::string(where) + ": values do not match the grid size");
}

}  // namespace fracp
