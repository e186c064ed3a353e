#pragma once

#include <map>
#include <string>
#include <vector>

#include "metaward/poly.hpp"

namespace metaward {

// Derivative multi-index, aligned with Ring::diff_positions().
using DerivIndex = std::vector<int>;

// Linear differential operator with polynomial coefficients, acting on the
// left: (A f)(v) = sum_alpha p_alpha(v) d^alpha f(v). The all-zero index is
// the multiplication part. Coefficients are kept nonzero.
class DiffOp {
public:
    explicit DiffOp(RingPtr ring) : ring_(std::move(ring)) {}

    static DiffOp zero(RingPtr ring) { return DiffOp(std::move(ring)); }
    static DiffOp multiplication(Poly p);
    // d/d{name}, raised to `order`.
    static DiffOp derivative(RingPtr ring, const std::string& name, int order = 1);

    const RingPtr& ring() const { return ring_; }
    const std::map<DerivIndex, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Highest total derivative order appearing.
    int order() const;

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    void scale(const GaussianRational& c);
    friend DiffOp operator*(DiffOp a, const GaussianRational& c) { a.scale(c); return a; }
    friend DiffOp operator*(const GaussianRational& c, DiffOp a) { a.scale(c); return a; }

    // Multiplication operator p composed in front: f -> p * (A f).
    DiffOp left_multiply(const Poly& p) const;

    // Apply to a polynomial.
    Poly apply(const Poly& f) const;

    // Substitute a scalar into every coefficient. Rejected when the operator
    // still differentiates with respect to that symbol.
    DiffOp substitute(const std::string& name, const GaussianRational& value) const;

    void add_term(const DerivIndex& index, const Poly& coef);

    // Canonical text form; derivative terms first, multiplication part last.
    std::string to_string() const;

private:
    RingPtr ring_;
    std::map<DerivIndex, Poly> terms_;
};

// (A o B) f = A (B f), expanded with the generalized Leibniz rule; exact.
DiffOp compose(const DiffOp& a, const DiffOp& b);

// [A, B] = A o B - B o A.
DiffOp commutator(const DiffOp& a, const DiffOp& b);

// Relabel a one-body operator onto body 1 or 2 of the two-body ring:
// t -> t_i, r -> r_i, zeta -> zeta_i, x -> x_i, gamma -> gamma_i, nu -> nu_i.
// mu and c are shared and stay unlabeled.
DiffOp lift_two_body(const DiffOp& op, int body);

} // namespace metaward
