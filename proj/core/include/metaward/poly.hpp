#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "metaward/rational.hpp"
#include "metaward/ring.hpp"

namespace metaward {

// Dense exponent vector aligned with the ring's symbol order.
using ExpVec = std::vector<int>;

using Assignment = std::map<std::string, std::complex<double>>;

// Multivariate polynomial with exact GaussianRational coefficients.
// Negative exponents are admitted only on invertible symbols (Laurent in mu).
// The term map is kept free of zero coefficients, so is_zero() and operator==
// are structural.
class Poly {
public:
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, GaussianRational c);
    static Poly variable(RingPtr ring, const std::string& name, int exponent = 1);
    static Poly monomial(RingPtr ring, const std::map<std::string, int>& exponents,
                         GaussianRational coef);

    const RingPtr& ring() const { return ring_; }
    const std::map<ExpVec, GaussianRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GaussianRational& c) { a.scale(c); return a; }
    friend Poly operator*(const GaussianRational& c, Poly a) { a.scale(c); return a; }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    void scale(const GaussianRational& c);
    Poly pow(int k) const;                                 // k >= 0

    // Exact partial derivative; the symbol must be differentiable.
    Poly diff(const std::string& name) const;

    // Exact substitution of a scalar. Substituting zero into a symbol carried
    // with negative exponent raises PoleAtContractionError.
    Poly subst(const std::string& name, const GaussianRational& value) const;

    // Substitution of a polynomial over the same ring; the replaced symbol
    // must occur with non-negative exponents only.
    Poly subst_poly(const std::string& name, const Poly& value) const;

    // Numeric evaluation; every symbol occurring in the polynomial must be
    // assigned. Negative exponents require a nonzero assigned value.
    std::complex<double> eval(const Assignment& values) const;

    // Exact evaluation at rational points (reference path for eval tests).
    GaussianRational eval_exact(const std::map<std::string, GaussianRational>& values) const;

    void add_term(const ExpVec& exps, const GaussianRational& coef);

    // Canonical text form, grammar-compatible (see op_parser.hpp).
    std::string to_string() const;

private:
    RingPtr ring_;
    std::map<ExpVec, GaussianRational> terms_;
};

namespace detail {

// Shared by the Poly and DiffOp printers: one signed product term.
// `parts` receives " + "-joined pieces with the sign folded into the first.
void append_term_text(std::vector<std::string>& parts, const Ring& ring, const ExpVec& exps,
                      const GaussianRational& coef, const std::string& deriv_suffix);

std::string join_terms(const std::vector<std::string>& parts);

} // namespace detail

} // namespace metaward
