#pragma once

// Umbrella header for the quasitree library.

#include "quasitree/check_harness.hpp"
#include "quasitree/delta_matroid.hpp"
#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/io.hpp"
#include "quasitree/matrices.hpp"
#include "quasitree/quasi_tree.hpp"
#include "quasitree/random_gen.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"
#include "quasitree/subset_polynomial.hpp"
#include "quasitree/symbolic.hpp"
#include "quasitree/topology.hpp"
