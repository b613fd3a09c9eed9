// sqfcs.hpp — umbrella header.

#pragma once

#include "sqfcs/analysis.hpp"
#include "sqfcs/cgf.hpp"
#include "sqfcs/config.hpp"
#include "sqfcs/csv.hpp"
#include "sqfcs/cumulants.hpp"
#include "sqfcs/jet.hpp"
#include "sqfcs/model.hpp"
#include "sqfcs/parallel.hpp"
#include "sqfcs/trajectory.hpp"
