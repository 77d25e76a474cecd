#pragma once

// Umbrella header.

#include "sgbasis/coeffs.hpp"
#include "sgbasis/gram.hpp"
#include "sgbasis/linalg.hpp"
#include "sgbasis/numeric.hpp"
#include "sgbasis/operator_expr.hpp"
#include "sgbasis/potential.hpp"
#include "sgbasis/quadrature.hpp"
#include "sgbasis/serialize.hpp"
#include "sgbasis/spectra.hpp"
#include "sgbasis/state.hpp"
#include "sgbasis/tensor.hpp"
#include "sgbasis/verify.hpp"
