#pragma once

#include "occ/access_log.hpp"
#include "occ/centers.hpp"
#include "occ/clustering.hpp"
#include "occ/common.hpp"
#include "occ/engine.hpp"
#include "occ/eval.hpp"
#include "occ/good_event.hpp"
#include "occ/graph.hpp"
#include "occ/instances.hpp"
#include "occ/metrics.hpp"
#include "occ/pivot.hpp"
#include "occ/rational.hpp"
#include "occ/report.hpp"
#include "occ/sampling.hpp"
