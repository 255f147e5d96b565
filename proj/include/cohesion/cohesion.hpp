#pragma once

#include "cohesion/bench.hpp"
#include "cohesion/cluster_family.hpp"
#include "cohesion/disjoint_set.hpp"
#include "cohesion/export.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/strong_truss.hpp"
#include "cohesion/trapeze.hpp"
#include "cohesion/triangles.hpp"
#include "cohesion/truss.hpp"
#include "cohesion/weighted.hpp"
