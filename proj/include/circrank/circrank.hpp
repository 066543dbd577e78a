#pragma once

// Umbrella header for the circulation-removal preference aggregation
// library.

#include "circrank/kemeny.hpp"
#include "circrank/mcnf.hpp"
#include "circrank/minmax.hpp"
#include "circrank/oracle.hpp"
#include "circrank/partial_order.hpp"
#include "circrank/rational.hpp"
#include "circrank/strong_circulation.hpp"
#include "circrank/vote_graph.hpp"
