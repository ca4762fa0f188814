#pragma once

#include <complex>
#include <span>

#include "aoi/laplace.hpp"
#include "aoi/service_distribution.hpp"

namespace aoi {

// Steady state of the M/G/1/1 queue with preemption probability theta.
struct StationaryModel {
    StationaryModel(double lambda_, ServiceDistribution service_, double theta_);

    double lambda;
    ServiceDistribution service;
    double theta;
};

// Long-run probability that the system is empty.
double m_infinity(const StationaryModel& model);

// P(empty, age <= x) in steady state.
double m_x_stationary(const StationaryModel& model, double x);

// LST of the stationary age; theta > 0 only.
std::complex<double> aoi_lst(const StationaryModel& model, std::complex<double> s);

// theta = 0 uses a convolution quadrature that also accepts deterministic
// service; theta > 0 inverts the LST numerically.
double aoi_cdf_stationary(const StationaryModel& model, double x, const InversionSettings& inv = {});
double aoi_pdf_stationary(const StationaryModel& model, double x, const InversionSettings& inv = {});

// Closed forms for exponential (rate mu) or deterministic (1/mu) service.
double closed_form_mm11(double lambda, double mu, double x);
double closed_form_md11(double lambda, double mu, double x);
double closed_form_mm11_preemptive(double lambda, double mu, double x);

// True when the preemptive M/M/1/1 age CDF dominates the non-preemptive one on xs.
bool check_dominance(double lambda, double mu, std::span<const double> xs);

}  // namespace aoi
