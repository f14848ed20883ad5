#pragma once

#include "ewens/elementary.hpp"
#include "ewens/error.hpp"
#include "ewens/graphs.hpp"
#include "ewens/montecarlo.hpp"
#include "ewens/permutation.hpp"
#include "ewens/ratfun.hpp"
#include "ewens/rational.hpp"
#include "ewens/rng.hpp"
#include "ewens/set_partition.hpp"
#include "ewens/ssep.hpp"
#include "ewens/statistics.hpp"
