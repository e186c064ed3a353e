#pragma once

#include <memory>
#include <map>
#include <string>
#include <vector>

#include "metaward/errors.hpp"

namespace metaward {

// Differentiation is only defined for coordinate-like symbols; everything else
// is a formal parameter. Exactly "mu" may carry negative exponents.
struct VarSymbol {
    std::string name;
    bool differentiable = false;
    bool invertible = false;

    friend bool operator==(const VarSymbol& a, const VarSymbol& b) {
        return a.name == b.name && a.differentiable == b.differentiable && a.invertible == b.invertible;
    }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Immutable ordered variable list shared by all Polys built over it.
class Ring {
public:
    static RingPtr create(std::vector<VarSymbol> symbols);

    // t, r, zeta, mu | x, gamma, nu, c
    static const RingPtr& one_body();
    // t1, r1, zeta1, t2, r2, zeta2, mu | x1, gamma1, nu1, x2, gamma2, nu2, c
    static const RingPtr& two_body();
    // t, r, zeta1, zeta2, mu | x1, x2, nu1, nu2, c
    static const RingPtr& reduced();

    std::size_t size() const { return symbols_.size(); }
    const std::vector<VarSymbol>& symbols() const { return symbols_; }
    const VarSymbol& symbol(std::size_t i) const { return symbols_[i]; }

    // -1 when the name is unknown.
    int index_of(const std::string& name) const;
    bool has(const std::string& name) const { return index_of(name) >= 0; }

    // Positions of differentiable symbols, in declaration order.
    const std::vector<int>& diff_positions() const { return diff_positions_; }

    bool same_as(const Ring& o) const { return symbols_ == o.symbols_; }

private:
    explicit Ring(std::vector<VarSymbol> symbols);

    std::vector<VarSymbol> symbols_;
    std::map<std::string, int> index_;
    std::vector<int> diff_positions_;
};

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b))
        throw RingMismatchError(std::string(where) + ": operands built over different rings");
}

} // namespace metaward
