#ifndef SIEGEL_POLYNOMIAL_HPP
#define SIEGEL_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "siegel/complex_util.hpp"

namespace siegel {

/// Dense complex polynomial, coefficients in ascending powers. Normalized so
/// the trailing stored coefficient is nonzero; the zero polynomial keeps an
/// empty coefficient list and degree -1.
class ComplexPolynomial {
  public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Complex> coeffs);

    static ComplexPolynomial zero() { return ComplexPolynomial(); }
    static ComplexPolynomial constant(Complex value);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const;
    Complex leading() const;
    Complex constant_term() const { return coeff(0); }

    /// Horner evaluation; compensated summation above degree 100.
    /// Throws std::runtime_error on a non-finite intermediate.
    Complex eval(Complex z) const;
    /// Same evaluation without the finiteness guard (root-finder internals).
    Complex eval_unchecked(Complex z) const;

    ComplexPolynomial derivative() const;
    ComplexPolynomial operator+(const ComplexPolynomial& other) const;
    ComplexPolynomial operator*(const ComplexPolynomial& other) const;
    ComplexPolynomial scaled(Complex k) const;

  private:
    std::vector<Complex> coeffs_;
};

/// Compensated (error-free transformation) Horner evaluation.
Complex horner_compensated(std::span<const Complex> ascending, Complex z);

} // namespace siegel

#endif
