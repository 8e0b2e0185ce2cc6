#pragma once

// Umbrella header: weighted hyperplane arrangements, stability, the
// Hirzebruch quadratic form, balanced metrics, condition (F), and the
// Dunkl-weight feasibility machinery.

#include "dunkl/arrangement.hpp"
#include "dunkl/balance.hpp"
#include "dunkl/catalog.hpp"
#include "dunkl/hirzebruch.hpp"
#include "dunkl/stability.hpp"
#include "dunkl/verdict.hpp"
#include "dunkl/weightfinder.hpp"
