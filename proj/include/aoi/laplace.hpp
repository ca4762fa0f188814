#pragma once

#include <complex>
#include <functional>

namespace aoi {

enum class InversionMethod { Euler };

// Bromwich inversion along Re(s) = gamma, accelerated by Euler summation of
// the alternating trapezoid series.
struct InversionSettings {
    // Contour abscissa. 0 selects gamma = a / (2x), which bounds the
    // discretization error by about exp(-a) independently of x.
    double gamma = 0.0;
    double a = 18.4;
    int terms = 38;        // partial sums before averaging
    int euler_terms = 11;  // binomial averaging depth
    InversionMethod method = InversionMethod::Euler;

    void validate() const;
};

using LaplaceTransform = std::function<std::complex<double>(std::complex<double>)>;

// f(x) from its Laplace transform F(s) = int_0^inf e^{-sx} f(x) dx, x > 0.
double invert_laplace(const LaplaceTransform& transform, double x, const InversionSettings& settings = {});

}  // namespace aoi
