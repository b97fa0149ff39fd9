#pragma once

#include "activation.hpp"
#include "baseline.hpp"
#include "bounds.hpp"
#include "combinatorics.hpp"
#include "density.hpp"
#include "dichotomy.hpp"
#include "errors.hpp"
#include "hypothesis_class.hpp"
#include "lp.hpp"
#include "network.hpp"
#include "point_set.hpp"
#include "trace.hpp"
#include "uc.hpp"
