#pragma once

#include "block_operator.hpp"
#include "compatibility.hpp"
#include "dense_operator.hpp"
#include "ensemble.hpp"
#include "feasibility.hpp"
#include "gamma.hpp"
#include "half_int.hpp"
#include "legendre.hpp"
#include "multiplicity.hpp"
#include "parallel.hpp"
#include "scenario_json.hpp"
#include "spin_matrices.hpp"
#include "version.hpp"
#include "wigner.hpp"
