#pragma once

#include "escrate/algebra/matrix.hpp"
#include "escrate/algebra/polynomial.hpp"
#include "escrate/algebra/rational_function.hpp"
#include "escrate/algebra/recurrence.hpp"
#include "escrate/algebra/roots.hpp"
#include "escrate/constructions.hpp"
#include "escrate/error.hpp"
#include "escrate/escape.hpp"
#include "escrate/oracle.hpp"
#include "escrate/shift.hpp"
#include "escrate/spectral.hpp"
#include "escrate/tables.hpp"
#include "escrate/torus.hpp"
#include "escrate/words.hpp"
