#include "siegel/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

struct Split {
    double value;
    double error;
};

inline Split two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline Split two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

// Complex product with componentwise rounding-error terms.
inline void cmul_eft(Complex a, Complex b, Complex& prod, Complex& err) {
    Split p1 = two_prod(a.real(), b.real());
    Split p2 = two_prod(a.imag(), b.imag());
    Split p3 = two_prod(a.real(), b.imag());
    Split p4 = two_prod(a.imag(), b.real());
    Split re = two_sum(p1.value, -p2.value);
    Split im = two_sum(p3.value, p4.value);
    prod = {re.value, im.value};
    err = {p1.error - p2.error + re.error, p3.error + p4.error + im.error};
}

inline void cadd_eft(Complex a, Complex b, Complex& sum, Complex& err) {
    Split re = two_sum(a.real(), b.real());
    Split im = two_sum(a.imag(), b.imag());
    sum = {re.value, im.value};
    err = {re.error, im.error};
}

} // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == Complex{0.0, 0.0})
        coeffs_.pop_back();
}

ComplexPolynomial ComplexPolynomial::constant(Complex value) {
    return ComplexPolynomial(std::vector<Complex>{value});
}

Complex ComplexPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(k)];
}

Complex ComplexPolynomial::leading() const {
    if (coeffs_.empty()) return {0.0, 0.0};
    return coeffs_.back();
}

Complex ComplexPolynomial::eval_unchecked(Complex z) const {
    if (coeffs_.empty()) return {0.0, 0.0};
    if (degree() > 100) return horner_compensated(coeffs_, z);
    Complex r{0.0, 0.0};
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * z + coeffs_[k];
    return r;
}

Complex ComplexPolynomial::eval(Complex z) const {
    Complex r = eval_unchecked(z);
    if (!is_finite(r))
        throw std::runtime_error("polynomial evaluation overflowed at z = " +
                                 format_complex(z));
    return r;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return zero();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& other) const {
    std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()),
                             Complex{0.0, 0.0});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) out[k] += other.coeffs_[k];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial ComplexPolynomial::operator*(const ComplexPolynomial& other) const {
    if (is_zero() || other.is_zero()) return zero();
    std::vector<Complex> out(coeffs_.size() + other.coeffs_.size() - 1,
                             Complex{0.0, 0.0});
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * other.coeffs_[j];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial ComplexPolynomial::scaled(Complex k) const {
    std::vector<Complex> out(coeffs_);
    for (auto& c : out) c *= k;
    return ComplexPolynomial(std::move(out));
}

Complex horner_compensated(std::span<const Complex> a, Complex z) {
    if (a.empty()) return {0.0, 0.0};
    Complex r = a.back();
    Complex comp{0.0, 0.0};
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        Complex prod, perr, sum, serr;
        cmul_eft(r, z, prod, perr);
        cadd_eft(prod, a[k], sum, serr);
        r = sum;
        comp = comp * z + (perr + serr);
    }
    return r + comp;
}

} // namespace siegel
