#include "fracp/weight.hpp"

#include <cmath>

namespace fracp {

double WeightSpec::value_at(double x, const Grid& g) const {
    switch (kind_) {
        case Kind::constant: return c_;
        case Kind::power:
        case Kind::scaled_power: {
            const double rho = std::min(x - g.a, g.b - x);
            return c_ * std::pow(rho, -beta_);
        }
        case Kind::tabulated:
            throw std::invalid_argument("WeightSpec: tabulated weights have no off-node values");
    }
    return 0.0;
}

double WeightSpec::node_value(const Grid& g, int i) const {
    if (kind_ == Kind::tabulated) {
        if (static_cast<int>(table_.size()) != g.n)
            throw std::invalid_argument("WeightSpec: table size does not match grid");
        return table_[static_cast<std::size_t>(i)];
    }
    return value_at(g.node(i), g);
}

}  // namespace fracp
