#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "metaward/errors.hpp"

namespace metaward {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact complex scalar a + b*i with rational a, b.
// cpp_rational keeps both parts in lowest terms with positive denominator,
// so equality is structural and zero has a unique form.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long long n) : re_(n) {}                        // NOLINT(google-explicit-constructor)
    GaussianRational(long long num, long long den);
    GaussianRational(BigRat re, BigRat im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(0, BigRat(1)); }
    static GaussianRational from_parts(BigInt re_num, BigInt re_den, BigInt im_num, BigInt im_den);

    const BigRat& re() const { return re_; }
    const BigRat& im() const { return im_; }
    BigInt re_num() const { return numerator(re_); }
    BigInt re_den() const { return denominator(re_); }
    BigInt im_num() const { return numerator(im_); }
    BigInt im_den() const { return denominator(im_); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_ == 1 && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);   // throws on division by zero

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational reciprocal() const;
    GaussianRational pow(int k) const;             // negative k inverts; throws on 0^-k

    std::complex<double> to_complex() const;

    // Compact display form: "2", "-2/3", "i", "2+3i", "1/2-i".
    std::string to_string() const;

private:
    BigRat re_{0};
    BigRat im_{0};
};

} // namespace metaward
