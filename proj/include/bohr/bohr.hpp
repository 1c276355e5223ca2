#pragma once

// Bohr-type operator inequalities: certification, checking, and falsification
// for finite-dimensional complex matrices.

#include "bohr/calculus.hpp"
#include "bohr/catalog.hpp"
#include "bohr/eig.hpp"
#include "bohr/errors.hpp"
#include "bohr/io.hpp"
#include "bohr/jensen.hpp"
#include "bohr/majorization.hpp"
#include "bohr/matrix.hpp"
#include "bohr/order.hpp"
#include "bohr/rng.hpp"
#include "bohr/search.hpp"
#include "bohr/tolerance.hpp"
