// Umbrella header for the theta13 library.

#ifndef THETA13_THETA13_HPP
#define THETA13_THETA13_HPP

#include "theta13/canonical.hpp"
#include "theta13/divisor.hpp"
#include "theta13/errors.hpp"
#include "theta13/linalg.hpp"
#include "theta13/oracle.hpp"
#include "theta13/report.hpp"
#include "theta13/sampling.hpp"
#include "theta13/siegel.hpp"
#include "theta13/theta.hpp"
#include "theta13/torus.hpp"
#include "theta13/zero_finder.hpp"

#endif
