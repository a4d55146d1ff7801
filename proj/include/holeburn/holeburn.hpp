// holeburn.hpp — umbrella header.

#pragma once

#include "holeburn/types.hpp"
#include "holeburn/pulses.hpp"
#include "holeburn/hamiltonian.hpp"
#include "holeburn/integrator.hpp"
#include "holeburn/dynamics.hpp"
#include "holeburn/protocols.hpp"
#include "holeburn/analytics.hpp"
#include "holeburn/sweep.hpp"
#include "holeburn/config.hpp"
#include "holeburn/output.hpp"
#include "holeburn/figures.hpp"
#include "holeburn/commands.hpp"
