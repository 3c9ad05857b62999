#pragma once

// Umbrella header.

#include "qalg/algebra.hpp"
#include "qalg/catalog.hpp"
#include "qalg/equations.hpp"
#include "qalg/io.hpp"
#include "qalg/network.hpp"
#include "qalg/reductions.hpp"
#include "qalg/representation.hpp"
#include "qalg/solver.hpp"
