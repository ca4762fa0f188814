#include "aoi/laplace.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "aoi/errors.hpp"

namespace aoi {

void InversionSettings::validate() const {
    if (gamma < 0.0 || !std::isfinite(gamma)) throw ConfigError("inversion gamma must be nonnegative");
    if (!(a > 0.0)) throw ConfigError("inversion parameter a must be positive");
    if (terms < 1 || euler_terms < 0) throw ConfigError("inversion term counts must be positive");
}

double invert_laplace(const LaplaceTransform& transform, double x, const InversionSettings& settings) {
    settings.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Laplace inversion needs x > 0");
    const double g = settings.gamma > 0.0 ? settings.gamma : settings.a / (2.0 * x);
    const double w = std::numbers::pi / x;
    const int total = settings.terms + settings.euler_terms;

    std::vector<double> partial(static_cast<std::size_t>(total) + 1);
    double sum = 0.5 * transform({g, 0.0}).real();
    partial[0] = sum;
    for (int k = 1; k <= total; ++k) {
        const double term = transform({g, k * w}).real();
        sum += (k % 2 == 0 ? term : -term);
        partial[static_cast<std::size_t>(k)] = sum;
    }

    // Binomial average of the last euler_terms + 1 partial sums.
    double avg = 0.0;
    double binom = 1.0;
    const int m = settings.euler_terms;
    for (int j = 0; j <= m; ++j) {
        avg += binom * partial[static_cast<std::size_t>(settings.terms + j)];
        binom *= static_cast<double>(m - j) / static_cast<double>(j + 1);
    }
    avg *= std::ldexp(1.0, -m);

    const double value = std::exp(g * x) / x * avg;
    if (!std::isfinite(value))
        throw InversionError("Laplace inversion produced a non-finite value at x = " + std::to_string(x));
    return value;
}

}  // namespace aoi
