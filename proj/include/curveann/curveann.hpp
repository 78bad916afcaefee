#pragma once

#include "curveann/candidates.hpp"
#include "curveann/coord.hpp"
#include "curveann/curve.hpp"
#include "curveann/curve_io.hpp"
#include "curveann/error.hpp"
#include "curveann/frechet.hpp"
#include "curveann/hardgen.hpp"
#include "curveann/index.hpp"
#include "curveann/oracle.hpp"
#include "curveann/serialize.hpp"
#include "curveann/simplify.hpp"
