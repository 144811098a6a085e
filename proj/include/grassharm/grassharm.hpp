#pragma once

#include "grassharm/error.hpp"
#include "grassharm/lattice.hpp"
#include "grassharm/dimension.hpp"
#include "grassharm/thresholds.hpp"
#include "grassharm/jacobi.hpp"
#include "grassharm/torus.hpp"
#include "grassharm/spherical.hpp"
#include "grassharm/rng.hpp"
#include "grassharm/unitary.hpp"
#include "grassharm/parallel.hpp"
#include "grassharm/measure.hpp"
#include "grassharm/sobolev.hpp"
