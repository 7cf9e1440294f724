#pragma once

#include "sptlab/errors.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"
#include "sptlab/series_io.hpp"
#include "sptlab/partitions.hpp"
#include "sptlab/forms.hpp"
#include "sptlab/hecke.hpp"
#include "sptlab/quadforms.hpp"
#include "sptlab/atkin.hpp"
#include "sptlab/report.hpp"
#include "sptlab/verifier.hpp"
