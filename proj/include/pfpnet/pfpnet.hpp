#pragma once

#include "pfpnet/graph.hpp"
#include "pfpnet/pfp_model.hpp"
#include "pfpnet/metrics.hpp"
#include "pfpnet/io_formats.hpp"
#include "pfpnet/kcore_viz.hpp"
#include "pfpnet/compare.hpp"
