#include "metaward/poly.hpp"

#include <sstream>

namespace metaward {

namespace {

std::complex<double> ipow(std::complex<double> base, int k) {
    if (k < 0) {
        if (base == std::complex<double>(0.0, 0.0))
            throw EvalError("negative power of zero in eval");
        return 1.0 / ipow(base, -k);
    }
    std::complex<double> acc(1.0, 0.0);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string rat_str(const BigRat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

} // namespace

Poly Poly::constant(RingPtr ring, GaussianRational c) {
    Poly p(std::move(ring));
    p.add_term(ExpVec(p.ring_->size(), 0), c);
    return p;
}

Poly Poly::variable(RingPtr ring, const std::string& name, int exponent) {
    Poly p(std::move(ring));
    int idx = p.ring_->index_of(name);
    if (idx < 0) throw Error("unknown symbol '" + name + "' in ring");
    ExpVec e(p.ring_->size(), 0);
    e[static_cast<std::size_t>(idx)] = exponent;
    p.add_term(e, GaussianRational(1));
    return p;
}

Poly Poly::monomial(RingPtr ring, const std::map<std::string, int>& exponents, GaussianRational coef) {
    Poly p(std::move(ring));
    ExpVec e(p.ring_->size(), 0);
    for (const auto& [name, k] : exponents) {
        int idx = p.ring_->index_of(name);
        if (idx < 0) throw Error("unknown symbol '" + name + "' in ring");
        e[static_cast<std::size_t>(idx)] = k;
    }
    p.add_term(e, coef);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const ExpVec& e = terms_.begin()->first;
    for (int k : e)
        if (k != 0) return false;
    return true;
}

void Poly::add_term(const ExpVec& exps, const GaussianRational& coef) {
    if (exps.size() != ring_->size()) throw Error("exponent vector does not match ring");
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 && !ring_->symbol(i).invertible)
            throw Error("negative exponent on non-invertible symbol '" + ring_->symbol(i).name + "'");
    }
    if (coef.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coef);
    } else {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(ring_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_ring(ring_, o.ring_, "poly add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_ring(ring_, o.ring_, "poly sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_ring(a.ring_, b.ring_, "poly mul");
    Poly out(a.ring_);
    ExpVec e(a.ring_->size(), 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

void Poly::scale(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [e, v] : terms_) v *= c;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw Error("Poly::pow with negative exponent");
    Poly acc = Poly::constant(ring_, GaussianRational(1));
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

Poly Poly::diff(const std::string& name) const {
    int idx = ring_->index_of(name);
    if (idx < 0) throw Error("unknown symbol '" + name + "' in ring");
    if (!ring_->symbol(static_cast<std::size_t>(idx)).differentiable)
        throw NonDifferentiableError("derivative with respect to non-differentiable symbol '" + name + "'");
    Poly out(ring_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<std::size_t>(idx)];
        if (k == 0) continue;
        ExpVec de = e;
        de[static_cast<std::size_t>(idx)] = k - 1;
        out.add_term(de, c * GaussianRational(k));
    }
    return out;
}

Poly Poly::subst(const std::string& name, const GaussianRational& value) const {
    int idx = ring_->index_of(name);
    if (idx < 0) throw Error("unknown symbol '" + name + "' in ring");
    Poly out(ring_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<std::size_t>(idx)];
        if (k < 0 && value.is_zero())
            throw PoleAtContractionError("substituting 0 into '" + name + "' carried with exponent " +
                                         std::to_string(k));
        GaussianRational coef = c * value.pow(k);
        if (coef.is_zero()) continue;
        ExpVec se = e;
        se[static_cast<std::size_t>(idx)] = 0;
        out.add_term(se, coef);
    }
    return out;
}

Poly Poly::subst_poly(const std::string& name, const Poly& value) const {
    require_same_ring(ring_, value.ring_, "poly subst");
    int idx = ring_->index_of(name);
    if (idx < 0) throw Error("unknown symbol '" + name + "' in ring");
    Poly out(ring_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<std::size_t>(idx)];
        if (k < 0) throw Error("polynomial substitution into negative power of '" + name + "'");
        ExpVec se = e;
        se[static_cast<std::size_t>(idx)] = 0;
        Poly rest(ring_);
        rest.add_term(se, c);
        out += rest * value.pow(k);
    }
    return out;
}

std::complex<double> Poly::eval(const Assignment& values) const {
    std::complex<double> total(0.0, 0.0);
    std::vector<const std::complex<double>*> slot(ring_->size(), nullptr);
    for (const auto& [e, c] : terms_) {
        std::complex<double> term = c.to_complex();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!slot[i]) {
                auto it = values.find(ring_->symbol(i).name);
                if (it == values.end())
                    throw EvalError("missing assignment for symbol '" + ring_->symbol(i).name + "'");
                slot[i] = &it->second;
            }
            term *= ipow(*slot[i], e[i]);
        }
        total += term;
    }
    return total;
}

GaussianRational Poly::eval_exact(const std::map<std::string, GaussianRational>& values) const {
    GaussianRational total(0);
    for (const auto& [e, c] : terms_) {
        GaussianRational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = values.find(ring_->symbol(i).name);
            if (it == values.end())
                throw EvalError("missing assignment for symbol '" + ring_->symbol(i).name + "'");
            term *= it->second.pow(e[i]);
        }
        total += term;
    }
    return total;
}

namespace detail {

namespace {

// Magnitude piece of a coefficient with the sign pulled out; mixed complex
// values get parenthesized instead (sign stays inside).
std::string coef_piece(const GaussianRational& c, bool& negative, bool has_factors) {
    negative = false;
    if (c.is_real()) {
        BigRat q = c.re();
        if (q < 0) {
            negative = true;
            q = -q;
        }
        if (q == 1 && has_factors) return "";
        return rat_str(q);
    }
    if (c.re().is_zero()) {
        BigRat q = c.im();
        if (q < 0) {
            negative = true;
            q = -q;
        }
        if (q == 1) return "i";
        return rat_str(q) + "*i";
    }
    std::string inner = rat_str(c.re());
    const BigRat& im = c.im();
    if (im == 1) {
        inner += "+i";
    } else if (im == -1) {
        inner += "-i";
    } else if (im > 0) {
        inner += "+" + rat_str(im) + "*i";
    } else {
        inner += "-" + rat_str(-im) + "*i";
    }
    return "(" + inner + ")";
}

} // namespace

void append_term_text(std::vector<std::string>& parts, const Ring& ring, const ExpVec& exps,
                      const GaussianRational& coef, const std::string& deriv_suffix) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        int k = exps[i];
        if (k == 0) continue;
        if (k == 1)
            factors.push_back(ring.symbol(i).name);
        else
            factors.push_back(ring.symbol(i).name + "^" + std::to_string(k));
    }
    bool negative = false;
    std::string piece = coef_piece(coef, negative, !factors.empty() || !deriv_suffix.empty());
    std::string out = negative ? "-" : "";
    out += piece;
    for (const std::string& f : factors) {
        if (out.size() > (negative ? 1u : 0u)) out += "*";
        out += f;
    }
    if (!deriv_suffix.empty()) {
        if (out.size() > (negative ? 1u : 0u)) out += "*";
        out += deriv_suffix;
    }
    parts.push_back(std::move(out));
}

std::string join_terms(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        if (!p.empty() && p[0] == '-')
            out += " - " + p.substr(1);
        else
            out += " + " + p;
    }
    return out;
}

} // namespace detail

std::string Poly::to_string() const {
    std::vector<std::string> parts;
    // Descending exponent order reads naturally (leading term first).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        detail::append_term_text(parts, *ring_, it->first, it->second, "");
    return detail::join_terms(parts);
}

} // namespace metaward
