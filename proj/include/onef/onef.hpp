#pragma once

#include "onef/band.hpp"
#include "onef/fit.hpp"
#include "onef/grid.hpp"
#include "onef/model.hpp"
#include "onef/numeric.hpp"
#include "onef/quadrature.hpp"
#include "onef/samples.hpp"
#include "onef/synth.hpp"
#include "onef/turbulence.hpp"
