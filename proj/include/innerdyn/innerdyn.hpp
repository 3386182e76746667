#pragma once

#include "innerdyn/error.hpp"
#include "innerdyn/numerics.hpp"
#include "innerdyn/blaschke.hpp"
#include "innerdyn/inner_factor.hpp"
#include "innerdyn/halfplane.hpp"
#include "innerdyn/entire.hpp"
#include "innerdyn/raster.hpp"
#include "innerdyn/correspondence.hpp"
#include "innerdyn/io.hpp"
