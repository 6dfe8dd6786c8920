#pragma once

// Umbrella header for the whole library.

#include "unicrit/criteria.hpp"
#include "unicrit/disk_analysis.hpp"
#include "unicrit/error.hpp"
#include "unicrit/numfmt.hpp"
#include "unicrit/parse.hpp"
#include "unicrit/power_series.hpp"
#include "unicrit/report.hpp"
#include "unicrit/search.hpp"
#include "unicrit/transforms.hpp"
#include "unicrit/version.hpp"
