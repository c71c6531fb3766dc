#pragma once

#include "gtomo/bounds.hpp"
#include "gtomo/brascamp_lieb.hpp"
#include "gtomo/density.hpp"
#include "gtomo/error.hpp"
#include "gtomo/fisher.hpp"
#include "gtomo/oracle.hpp"
#include "gtomo/polyconvex.hpp"
#include "gtomo/polytope.hpp"
#include "gtomo/slicing.hpp"
#include "gtomo/types.hpp"
