#pragma once

#include "paracone/corpus.hpp"
#include "paracone/error.hpp"
#include "paracone/json_io.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/paraconvexity.hpp"
#include "paracone/quotient_analysis.hpp"
#include "paracone/report.hpp"
#include "paracone/vec.hpp"
