#ifndef VISGRAPH_VISGRAPH_HPP
#define VISGRAPH_VISGRAPH_HPP

#include "visgraph/classify.hpp"
#include "visgraph/descriptors.hpp"
#include "visgraph/error.hpp"
#include "visgraph/number_theory.hpp"
#include "visgraph/pipeline.hpp"
#include "visgraph/random.hpp"
#include "visgraph/synth.hpp"
#include "visgraph/visibility_graph.hpp"

#endif  // VISGRAPH_VISGRAPH_HPP
