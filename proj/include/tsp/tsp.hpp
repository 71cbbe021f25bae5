#pragma once

#include "tsp/errors.hpp"
#include "tsp/linalg.hpp"
#include "tsp/qubit_maps.hpp"
#include "tsp/criteria.hpp"
#include "tsp/nonunital.hpp"
#include "tsp/oracle.hpp"
#include "tsp/classify.hpp"
#include "tsp/witness.hpp"
#include "tsp/decomposability.hpp"
#include "tsp/region.hpp"
