#pragma once

#include "aoi/grid_function.hpp"
#include "aoi/rate_profile.hpp"
#include "aoi/service_distribution.hpp"

namespace aoi {

// M_t/G/1/1 system with preemption probability theta. The system starts
// empty at t = 0 with zero age.
struct SystemConfig {
    SystemConfig(RateProfile rate_, ServiceDistribution service_, double theta_);

    RateProfile rate;
    ServiceDistribution service;
    double theta;
};

}  // namespace aoi
