#pragma once

#include "jetmap/algebra.hpp"
#include "jetmap/duffing.hpp"
#include "jetmap/errors.hpp"
#include "jetmap/io.hpp"
#include "jetmap/jet.hpp"
#include "jetmap/monomial_table.hpp"
#include "jetmap/ode.hpp"
#include "jetmap/polynomial.hpp"
#include "jetmap/polynomial_system.hpp"
#include "jetmap/variational.hpp"
