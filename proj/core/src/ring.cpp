#include "metaward/ring.hpp"

#include <set>

namespace metaward {

namespace {

const std::set<std::string> kDifferentiableNames = {
    "t", "r", "zeta", "mu", "t1", "r1", "zeta1", "t2", "r2", "zeta2",
};

const std::set<std::string> kParameterNames = {
    "x", "gamma", "nu", "c", "x1", "x2", "gamma1", "gamma2", "nu1", "nu2", "M1",
};

} // namespace

Ring::Ring(std::vector<VarSymbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const VarSymbol& s = symbols_[i];
        if (!index_.emplace(s.name, static_cast<int>(i)).second)
            throw Error("duplicate symbol '" + s.name + "' in ring");
        if (s.invertible && s.name != "mu")
            throw Error("only 'mu' may be invertible, got '" + s.name + "'");
        if (s.differentiable) {
            if (!kDifferentiableNames.count(s.name))
                throw Error("'" + s.name + "' is not a differentiable symbol");
            diff_positions_.push_back(static_cast<int>(i));
        } else {
            if (!kParameterNames.count(s.name))
                throw Error("'" + s.name + "' is not a known parameter symbol");
        }
    }
}

RingPtr Ring::create(std::vector<VarSymbol> symbols) {
    return RingPtr(new Ring(std::move(symbols)));
}

int Ring::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

const RingPtr& Ring::one_body() {
    static const RingPtr ring = create({
        {"t", true, false},
        {"r", true, false},
        {"zeta", true, false},
        {"mu", true, true},
        {"x", false, false},
        {"gamma", false, false},
        {"nu", false, false},
        {"c", false, false},
    });
    return ring;
}

const RingPtr& Ring::two_body() {
    static const RingPtr ring = create({
        {"t1", true, false},
        {"r1", true, false},
        {"zeta1", true, false},
        {"t2", true, false},
        {"r2", true, false},
        {"zeta2", true, false},
        {"mu", true, true},
        {"x1", false, false},
        {"gamma1", false, false},
        {"nu1", false, false},
        {"x2", false, false},
        {"gamma2", false, false},
        {"nu2", false, false},
        {"c", false, false},
    });
    return ring;
}

const RingPtr& Ring::reduced() {
    static const RingPtr ring = create({
        {"t", true, false},
        {"r", true, false},
        {"zeta1", true, false},
        {"zeta2", true, false},
        {"mu", true, true},
        {"x1", false, false},
        {"x2", false, false},
        {"nu1", false, false},
        {"nu2", false, false},
        {"c", false, false},
    });
    return ring;
}

} // namespace metaward
