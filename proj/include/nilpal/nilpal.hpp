#pragma once

// Everything at once.

#include "nilpal/autofile.hpp"
#include "nilpal/autos.hpp"
#include "nilpal/central.hpp"
#include "nilpal/foxring.hpp"
#include "nilpal/lattice.hpp"
#include "nilpal/nilpotent.hpp"
#include "nilpal/verify.hpp"
#include "nilpal/words.hpp"
