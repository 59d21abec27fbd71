#pragma once

#include "fmc/bench.hpp"
#include "fmc/clusters.hpp"
#include "fmc/error.hpp"
#include "fmc/graph.hpp"
#include "fmc/markov.hpp"
#include "fmc/matrix.hpp"
#include "fmc/matrix_market.hpp"
#include "fmc/scalar.hpp"
#include "fmc/solve.hpp"
#include "fmc/transform.hpp"
