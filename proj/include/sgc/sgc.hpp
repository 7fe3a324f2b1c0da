#pragma once

// Umbrella header.
#include "sgc/calibration.hpp"
#include "sgc/config.hpp"
#include "sgc/constants.hpp"
#include "sgc/density_matrix.hpp"
#include "sgc/equations.hpp"
#include "sgc/errors.hpp"
#include "sgc/evolve.hpp"
#include "sgc/generator.hpp"
#include "sgc/params.hpp"
#include "sgc/response.hpp"
#include "sgc/run.hpp"
#include "sgc/steady_state.hpp"
#include "sgc/sweep.hpp"
#include "sgc/version.hpp"
