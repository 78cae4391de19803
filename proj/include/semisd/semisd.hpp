#pragma once

// Umbrella header: constructions, certificates and simulators for
// semi-selfdecomposable laws and the AR(1)/INAR(1) and subordinated
// Levy processes they generate.

#include "semisd/autoregressive.hpp"
#include "semisd/decompose.hpp"
#include "semisd/errors.hpp"
#include "semisd/inversion.hpp"
#include "semisd/io.hpp"
#include "semisd/mixtures.hpp"
#include "semisd/recipes.hpp"
#include "semisd/report.hpp"
#include "semisd/rng.hpp"
#include "semisd/semistable.hpp"
#include "semisd/stats.hpp"
#include "semisd/subordination.hpp"
#include "semisd/transform.hpp"
