#pragma once

#include "complexity.hpp"
#include "convert.hpp"
#include "core.hpp"
#include "expr.hpp"
#include "interval.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "rangebound.hpp"
#include "setops.hpp"
#include "taylor.hpp"
