#pragma once

// Panel AR(1) Monte Carlo laboratory: simulation, estimation, limit-law
// catalog, replication engine, inference, and batch CLI plumbing.

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "estimate.hpp"
#include "inference.hpp"
#include "innovations.hpp"
#include "io_util.hpp"
#include "limits.hpp"
#include "moments.hpp"
#include "montecarlo.hpp"
#include "panel.hpp"
#include "parallel.hpp"
#include "regime.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "runner.hpp"
#include "stats.hpp"
#include "summation.hpp"
#include "wiener.hpp"
