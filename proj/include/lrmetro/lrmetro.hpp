#pragma once

#include "lrmetro/lattice.hpp"
#include "lrmetro/hamiltonian.hpp"
#include "lrmetro/exact_engine.hpp"
#include "lrmetro/ising_analytic.hpp"
#include "lrmetro/limits.hpp"
#include "lrmetro/sweep.hpp"
