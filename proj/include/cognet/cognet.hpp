#pragma once

// Cognitive-hierarchy reasoning under network-biased belief formation:
// belief kernel, order/identity checks, game recursions, transparency
// design, and the seeded Monte Carlo experiments.

#include "cognet/belief.hpp"
#include "cognet/design.hpp"
#include "cognet/games.hpp"
#include "cognet/inequality.hpp"
#include "cognet/io.hpp"
#include "cognet/likelihood.hpp"
#include "cognet/ordering.hpp"
#include "cognet/prior.hpp"
#include "cognet/rng.hpp"
#include "cognet/sbm.hpp"
#include "cognet/util.hpp"
