#include "metaward/diffop.hpp"

#include <functional>

namespace metaward {

namespace {

GaussianRational binomial(int n, int k) {
    if (k < 0 || k > n) return GaussianRational(0);
    BigInt num = 1;
    BigInt den = 1;
    for (int j = 1; j <= k; ++j) {
        num *= (n - k + j);
        den *= j;
    }
    return GaussianRational(BigRat(num, den));
}

} // namespace

DiffOp DiffOp::multiplication(Poly p) {
    DiffOp out(p.ring());
    out.add_term(DerivIndex(out.ring_->diff_positions().size(), 0), p);
    return out;
}

DiffOp DiffOp::derivative(RingPtr ring, const std::string& name, int order) {
    if (order < 1) throw Error("derivative order must be >= 1");
    DiffOp out(ring);
    const auto& positions = out.ring_->diff_positions();
    int slot = -1;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (out.ring_->symbol(static_cast<std::size_t>(positions[i])).name == name) {
            slot = static_cast<int>(i);
            break;
        }
    }
    if (slot < 0) {
        if (out.ring_->has(name))
            throw NonDifferentiableError("derivative with respect to non-differentiable symbol '" + name + "'");
        throw Error("unknown symbol '" + name + "' in ring");
    }
    DerivIndex idx(positions.size(), 0);
    idx[static_cast<std::size_t>(slot)] = order;
    out.add_term(idx, Poly::constant(out.ring_, GaussianRational(1)));
    return out;
}

int DiffOp::order() const {
    int best = 0;
    for (const auto& [idx, p] : terms_) {
        int total = 0;
        for (int k : idx) total += k;
        if (total > best) best = total;
    }
    return best;
}

void DiffOp::add_term(const DerivIndex& index, const Poly& coef) {
    if (index.size() != ring_->diff_positions().size())
        throw Error("derivative index does not match ring");
    require_same_ring(ring_, coef.ring(), "diffop term");
    if (coef.is_zero()) return;
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        terms_.emplace(index, coef);
    } else {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOp DiffOp::operator-() const {
    DiffOp out(ring_);
    for (const auto& [idx, p] : terms_) out.terms_.emplace(idx, -p);
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    require_same_ring(ring_, o.ring_, "diffop add");
    for (const auto& [idx, p] : o.terms_) add_term(idx, p);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    require_same_ring(ring_, o.ring_, "diffop sub");
    for (const auto& [idx, p] : o.terms_) add_term(idx, -p);
    return *this;
}

void DiffOp::scale(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [idx, p] : terms_) p.scale(c);
}

DiffOp DiffOp::left_multiply(const Poly& p) const {
    require_same_ring(ring_, p.ring(), "diffop left multiply");
    DiffOp out(ring_);
    for (const auto& [idx, coef] : terms_) out.add_term(idx, p * coef);
    return out;
}

Poly DiffOp::apply(const Poly& f) const {
    require_same_ring(ring_, f.ring(), "diffop apply");
    Poly out = Poly::zero(ring_);
    const auto& positions = ring_->diff_positions();
    for (const auto& [idx, coef] : terms_) {
        Poly df = f;
        for (std::size_t i = 0; i < idx.size() && !df.is_zero(); ++i) {
            const std::string& name = ring_->symbol(static_cast<std::size_t>(positions[i])).name;
            for (int k = 0; k < idx[i] && !df.is_zero(); ++k) df = df.diff(name);
        }
        if (df.is_zero()) continue;
        out += coef * df;
    }
    return out;
}

DiffOp DiffOp::substitute(const std::string& name, const GaussianRational& value) const {
    const auto& positions = ring_->diff_positions();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (ring_->symbol(static_cast<std::size_t>(positions[i])).name != name) continue;
        for (const auto& [idx, p] : terms_)
            if (idx[i] != 0)
                throw Error("cannot substitute '" + name + "' while the operator differentiates it");
    }
    DiffOp out(ring_);
    for (const auto& [idx, p] : terms_) out.add_term(idx, p.subst(name, value));
    return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
    require_same_ring(a.ring(), b.ring(), "diffop compose");
    const RingPtr& ring = a.ring();
    const auto& positions = ring->diff_positions();
    DiffOp out(ring);

    // p d^alpha (q d^beta f) = sum_{gamma <= alpha} prod C(alpha_i, gamma_i)
    //                          p (d^gamma q) d^(alpha - gamma + beta) f
    for (const auto& [alpha, p] : a.terms()) {
        for (const auto& [beta, q] : b.terms()) {
            DerivIndex gamma(alpha.size(), 0);
            std::function<void(std::size_t, const Poly&, const GaussianRational&)> walk =
                [&](std::size_t i, const Poly& dq, const GaussianRational& weight) {
                    if (dq.is_zero()) return;
                    if (i == alpha.size()) {
                        DerivIndex idx(alpha.size());
                        for (std::size_t j = 0; j < idx.size(); ++j)
                            idx[j] = alpha[j] - gamma[j] + beta[j];
                        out.add_term(idx, weight * (p * dq));
                        return;
                    }
                    const std::string& name =
                        ring->symbol(static_cast<std::size_t>(positions[i])).name;
                    Poly cur = dq;
                    for (int g = 0; g <= alpha[i]; ++g) {
                        gamma[i] = g;
                        walk(i + 1, cur, weight * binomial(alpha[i], g));
                        if (g < alpha[i]) {
                            cur = cur.diff(name);
                            if (cur.is_zero()) break;
                        }
                    }
                    gamma[i] = 0;
                };
            walk(0, q, GaussianRational(1));
        }
    }
    return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) {
    return compose(a, b) - compose(b, a);
}

DiffOp lift_two_body(const DiffOp& op, int body) {
    if (body != 1 && body != 2) throw Error("body index must be 1 or 2");
    if (!op.ring()->same_as(*Ring::one_body()))
        throw Error("lift_two_body expects a one-body operator (already lifted?)");

    const RingPtr& src = Ring::one_body();
    const RingPtr& dst = Ring::two_body();
    const std::string tag = std::to_string(body);

    // Position map for exponent vectors.
    std::vector<int> pos_map(src->size());
    for (std::size_t i = 0; i < src->size(); ++i) {
        const std::string& name = src->symbol(i).name;
        std::string mapped = (name == "mu" || name == "c") ? name : name + tag;
        int j = dst->index_of(mapped);
        if (j < 0) throw Error("no two-body symbol for '" + name + "'");
        pos_map[i] = j;
    }
    // Slot map for derivative indices.
    const auto& src_diff = src->diff_positions();
    const auto& dst_diff = dst->diff_positions();
    std::vector<int> slot_map(src_diff.size());
    for (std::size_t i = 0; i < src_diff.size(); ++i) {
        int mapped_pos = pos_map[static_cast<std::size_t>(src_diff[i])];
        int slot = -1;
        for (std::size_t j = 0; j < dst_diff.size(); ++j)
            if (dst_diff[j] == mapped_pos) slot = static_cast<int>(j);
        if (slot < 0) throw Error("lifted symbol lost differentiability");
        slot_map[i] = slot;
    }

    DiffOp out(dst);
    for (const auto& [idx, coef] : op.terms()) {
        DerivIndex lifted_idx(dst_diff.size(), 0);
        for (std::size_t i = 0; i < idx.size(); ++i)
            lifted_idx[static_cast<std::size_t>(slot_map[i])] = idx[i];
        Poly lifted(dst);
        ExpVec e(dst->size(), 0);
        for (const auto& [exps, c] : coef.terms()) {
            std::fill(e.begin(), e.end(), 0);
            for (std::size_t i = 0; i < exps.size(); ++i)
                e[static_cast<std::size_t>(pos_map[i])] = exps[i];
            lifted.add_term(e, c);
        }
        out.add_term(lifted_idx, lifted);
    }
    return out;
}

std::string DiffOp::to_string() const {
    std::vector<std::string> parts;
    const auto& positions = ring_->diff_positions();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string suffix;
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            int k = it->first[i];
            if (k == 0) continue;
            if (!suffix.empty()) suffix += "*";
            suffix += "d" + ring_->symbol(static_cast<std::size_t>(positions[i])).name;
            if (k > 1) suffix += "^" + std::to_string(k);
        }
        const auto& coef_terms = it->second.terms();
        for (auto jt = coef_terms.rbegin(); jt != coef_terms.rend(); ++jt)
            detail::append_term_text(parts, *ring_, jt->first, jt->second, suffix);
    }
    return detail::join_terms(parts);
}

} // namespace metaward
