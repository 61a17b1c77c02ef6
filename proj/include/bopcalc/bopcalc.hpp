#pragma once

#include "bopcalc/catalog.hpp"
#include "bopcalc/conjecture.hpp"
#include "bopcalc/errors.hpp"
#include "bopcalc/graded_algebra.hpp"
#include "bopcalc/report.hpp"
#include "bopcalc/series.hpp"
#include "bopcalc/splitting.hpp"
#include "bopcalc/tower.hpp"
