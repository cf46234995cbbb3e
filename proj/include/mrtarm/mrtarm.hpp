#pragma once

#include "mrtarm/allocation.hpp"
#include "mrtarm/analysis.hpp"
#include "mrtarm/assignment.hpp"
#include "mrtarm/baselines.hpp"
#include "mrtarm/bench.hpp"
#include "mrtarm/checks.hpp"
#include "mrtarm/errors.hpp"
#include "mrtarm/geometry.hpp"
#include "mrtarm/io.hpp"
#include "mrtarm/maps.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/redistribution.hpp"
#include "mrtarm/roadmap.hpp"
#include "mrtarm/simulator.hpp"
#include "mrtarm/solver.hpp"
#include "mrtarm/world.hpp"
