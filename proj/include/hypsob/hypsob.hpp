#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/rational.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/multi_poly.hpp"
#include "hypsob/rat_fun.hpp"
#include "hypsob/linear_solve.hpp"
#include "hypsob/interpolate.hpp"
#include "hypsob/operator.hpp"
#include "hypsob/radial_expr.hpp"
#include "hypsob/euler_lagrange.hpp"
#include "hypsob/constants.hpp"
#include "hypsob/jet.hpp"
#include "hypsob/quadrature.hpp"
#include "hypsob/numeric_lab.hpp"
#include "hypsob/conformal.hpp"
