#pragma once

// Umbrella header for the stretched-string oscillator library.

#include "strosc/bounds.hpp"
#include "strosc/errors.hpp"
#include "strosc/model.hpp"
#include "strosc/numerics.hpp"
#include "strosc/ode.hpp"
#include "strosc/periods.hpp"
