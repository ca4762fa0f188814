#pragma once

#include <complex>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace aoi {

using Rng = std::mt19937_64;

struct Exponential {
    double rate;
};
struct Deterministic {
    double value;
};
// Uniform on [0, upper].
struct Uniform {
    double upper;
};
struct Gamma {
    double shape;
    double scale;
};
struct Erlang {
    int stages;
    double scale;
};

// Processing-time law of a packet.
class ServiceDistribution {
public:
    using Variant = std::variant<Exponential, Deterministic, Uniform, Gamma, Erlang>;

    explicit ServiceDistribution(Variant v);

    static ServiceDistribution exponential(double rate);
    static ServiceDistribution deterministic(double value);
    static ServiceDistribution uniform(double upper);
    static ServiceDistribution gamma(double shape, double scale);
    static ServiceDistribution erlang(int stages, double scale);

    double cdf(double z) const;
    // 1 - F(z), computed without cancellation in the tail.
    double ccdf(double z) const;
    // Throws UnsupportedOperation for Deterministic.
    double pdf(double z) const;
    // Laplace-Stieltjes transform E[exp(-s S)].
    std::complex<double> lst(std::complex<double> s) const;
    double lst(double s) const { return lst(std::complex<double>(s, 0.0)).real(); }
    // Laplace transform of the CDF, lst(s) / s.
    std::complex<double> cdf_transform(std::complex<double> s) const;
    // Integral of F over [0, z].
    double integrated_cdf(double z) const;

    double mean() const;
    bool has_density() const noexcept;
    // Shape parameter for Gamma/Erlang, 1 for Exponential; 0 otherwise.
    double shape() const noexcept;
    // Points where f is discontinuous or unbounded.
    std::vector<double> breakpoints() const;
    double sample(Rng& rng) const;
    bool is_nbu() const;
    std::string name() const;

    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
};

inline double service_cdf(const ServiceDistribution& d, double z) { return d.cdf(z); }
inline double service_pdf(const ServiceDistribution& d, double z) { return d.pdf(z); }
inline std::complex<double> service_lst(const ServiceDistribution& d, std::complex<double> s) {
    return d.lst(s);
}
inline double sample_service(const ServiceDistribution& d, Rng& rng) { return d.sample(rng); }
inline bool is_nbu(const ServiceDistribution& d) { return d.is_nbu(); }

}  // namespace aoi
