#pragma once

#include "liepoisson/algebra.hpp"
#include "liepoisson/bianchi.hpp"
#include "liepoisson/cre.hpp"
#include "liepoisson/dynamics.hpp"
#include "liepoisson/errors.hpp"
#include "liepoisson/figures.hpp"
#include "liepoisson/linalg.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"
#include "liepoisson/roots.hpp"
#include "liepoisson/version.hpp"
