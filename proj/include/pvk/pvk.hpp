#ifndef PVK_PVK_HPP
#define PVK_PVK_HPP

#include "pvk/core/box.hpp"
#include "pvk/core/cloud.hpp"
#include "pvk/core/io.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"
#include "pvk/core/voxel.hpp"

#include "pvk/sampling/baselines.hpp"
#include "pvk/sampling/coverage.hpp"
#include "pvk/sampling/fps.hpp"
#include "pvk/sampling/sampler_config.hpp"
#include "pvk/sampling/spc.hpp"

#include "pvk/aggregation/ball_query.hpp"
#include "pvk/aggregation/mlp.hpp"
#include "pvk/aggregation/set_abstraction.hpp"
#include "pvk/aggregation/vectorpool.hpp"

#include "pvk/pooling/bev.hpp"
#include "pvk/pooling/roi_grid.hpp"
#include "pvk/pooling/vsa.hpp"

#include "pvk/bench/report.hpp"
#include "pvk/bench/runner.hpp"
#include "pvk/bench/synth.hpp"

#endif
