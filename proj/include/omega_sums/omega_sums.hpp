#pragma once

#include "omega_sums/arithmetic.hpp"
#include "omega_sums/characters.hpp"
#include "omega_sums/divisor_identities.hpp"
#include "omega_sums/errors.hpp"
#include "omega_sums/exact.hpp"
#include "omega_sums/fn_spec.hpp"
#include "omega_sums/numeric.hpp"
#include "omega_sums/prime_sums.hpp"
#include "omega_sums/series.hpp"
#include "omega_sums/sieve.hpp"
#include "omega_sums/symfunc.hpp"
#include "omega_sums/zeta.hpp"
