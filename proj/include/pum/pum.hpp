#pragma once

#include "pum/covering.hpp"
#include "pum/csv.hpp"
#include "pum/experiments.hpp"
#include "pum/kernels.hpp"
#include "pum/metrics.hpp"
#include "pum/nonlinear.hpp"
#include "pum/partition.hpp"
#include "pum/point.hpp"
#include "pum/rbf.hpp"
#include "pum/sampling.hpp"
