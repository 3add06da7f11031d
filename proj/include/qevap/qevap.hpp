#pragma once

#include "qevap/csv.hpp"
#include "qevap/direct_solver.hpp"
#include "qevap/dispersion.hpp"
#include "qevap/jump.hpp"
#include "qevap/kernels.hpp"
#include "qevap/profiles.hpp"
#include "qevap/quadrature.hpp"
#include "qevap/spline.hpp"
