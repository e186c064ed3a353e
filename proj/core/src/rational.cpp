#include "metaward/rational.hpp"

#include <sstream>

namespace metaward {

GaussianRational::GaussianRational(long long num, long long den) {
    if (den == 0) throw Error("rational with zero denominator");
    re_ = BigRat(BigInt(num), BigInt(den));
}

GaussianRational GaussianRational::from_parts(BigInt re_num, BigInt re_den, BigInt im_num, BigInt im_den) {
    if (re_den.is_zero() || im_den.is_zero()) throw Error("rational with zero denominator");
    return GaussianRational(BigRat(std::move(re_num), std::move(re_den)),
                            BigRat(std::move(im_num), std::move(im_den)));
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    BigRat re = re_ * o.re_ - im_ * o.im_;
    BigRat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.reciprocal();
}

GaussianRational GaussianRational::reciprocal() const {
    if (is_zero()) throw Error("division by zero GaussianRational");
    BigRat n2 = re_ * re_ + im_ * im_;
    return GaussianRational(re_ / n2, -im_ / n2);
}

GaussianRational GaussianRational::pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    GaussianRational acc(1);
    GaussianRational base = *this;
    int e = k;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::complex<double> GaussianRational::to_complex() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
}

namespace {

std::string rat_str(const BigRat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

} // namespace

std::string GaussianRational::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (!re_.is_zero()) out += rat_str(re_);
    if (!im_.is_zero()) {
        if (!out.empty() && im_ > 0) out += "+";
        if (im_ == 1) {
            out += "i";
        } else if (im_ == -1) {
            out += "-i";
        } else {
            out += rat_str(im_) + "i";
        }
    }
    return out;
}

} // namespace metaward
