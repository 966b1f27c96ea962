#pragma once

#include "invmult/asymp.hpp"
#include "invmult/composition.hpp"
#include "invmult/dist.hpp"
#include "invmult/io.hpp"
#include "invmult/numeric.hpp"
#include "invmult/polynomial.hpp"
#include "invmult/prob_vector.hpp"
#include "invmult/qcomb.hpp"
#include "invmult/stats.hpp"
#include "invmult/table.hpp"
