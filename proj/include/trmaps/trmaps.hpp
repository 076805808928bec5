#pragma once

#include "curve.hpp"
#include "errors.hpp"
#include "extract.hpp"
#include "laurent.hpp"
#include "omega.hpp"
#include "rational.hpp"
#include "weight_series.hpp"
#include "zrational.hpp"
