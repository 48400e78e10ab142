#pragma once

#include "kklab/config.hpp"
#include "kklab/diagnostics.hpp"
#include "kklab/entropy.hpp"
#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"
#include "kklab/grid.hpp"
#include "kklab/hyperbolic.hpp"
#include "kklab/io.hpp"
#include "kklab/mollify.hpp"
#include "kklab/model.hpp"
#include "kklab/quadrature.hpp"
#include "kklab/riemann.hpp"
#include "kklab/scenario.hpp"
#include "kklab/trajectory.hpp"
#include "kklab/viscous.hpp"
