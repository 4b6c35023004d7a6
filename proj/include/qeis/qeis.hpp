#pragma once

// Exact arithmetic for degree-2 quaternionic Eisenstein series: Fourier
// coefficients over the Hurwitz order, the U(p) operator on q-expansions,
// p-adic limit series, and finite verification of the group-theoretic
// machinery behind them.

#include "qeis/bernoulli.hpp"
#include "qeis/divisor.hpp"
#include "qeis/eisenstein.hpp"
#include "qeis/errors.hpp"
#include "qeis/hermitian.hpp"
#include "qeis/io.hpp"
#include "qeis/padic.hpp"
#include "qeis/quaternion.hpp"
#include "qeis/rational.hpp"
#include "qeis/symplectic.hpp"
#include "qeis/verify.hpp"
