#pragma once

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/eigen.hpp"
#include "numrad/solve.hpp"
#include "numrad/random.hpp"
#include "numrad/numerical_radius.hpp"
#include "numrad/herglotz.hpp"
#include "numrad/g1.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/io.hpp"
#include "numrad/suite.hpp"
