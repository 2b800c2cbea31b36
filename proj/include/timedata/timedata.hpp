#pragma once

#include "timedata/analysis/config.hpp"
#include "timedata/analysis/csv.hpp"
#include "timedata/analysis/radar.hpp"
#include "timedata/analysis/sheet.hpp"
#include "timedata/error.hpp"
#include "timedata/geomlink.hpp"
#include "timedata/linkmodel.hpp"
#include "timedata/memtiming.hpp"
#include "timedata/optics.hpp"
#include "timedata/ptvda.hpp"
#include "timedata/relativity.hpp"
#include "timedata/units.hpp"
