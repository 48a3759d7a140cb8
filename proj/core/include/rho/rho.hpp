#pragma once

// Umbrella header for the density-operator engine.

#include "rho/complex_matrix.hpp"
#include "rho/density.hpp"
#include "rho/dynamics.hpp"
#include "rho/ensembles.hpp"
#include "rho/errors.hpp"
#include "rho/fft.hpp"
#include "rho/grid.hpp"
#include "rho/measurement.hpp"
#include "rho/operators.hpp"
#include "rho/rng.hpp"
#include "rho/spectral.hpp"
#include "rho/spin.hpp"
#include "rho/stats.hpp"
