#pragma once

#include "tgreg/config.hpp"
#include "tgreg/errors.hpp"
#include "tgreg/io_formats.hpp"
#include "tgreg/linops.hpp"
#include "tgreg/problems.hpp"
#include "tgreg/random.hpp"
#include "tgreg/solvers.hpp"
#include "tgreg/stopping.hpp"
#include "tgreg/threshold.hpp"
#include "tgreg/vector_ops.hpp"
