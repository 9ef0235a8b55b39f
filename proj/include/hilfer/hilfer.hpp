#pragma once

#include "hilfer/errors.hpp"
#include "hilfer/fractional_ops.hpp"
#include "hilfer/solver.hpp"
#include "hilfer/special_functions.hpp"
#include "hilfer/verification.hpp"
