#pragma once

// Everything: algebra, diagrams, the state sum, moves and the verifier.

#include "wskein/coefficients.hpp"
#include "wskein/diagram.hpp"
#include "wskein/diagram_io.hpp"
#include "wskein/errors.hpp"
#include "wskein/fraction.hpp"
#include "wskein/laurent.hpp"
#include "wskein/moves.hpp"
#include "wskein/polynomial.hpp"
#include "wskein/skein.hpp"
#include "wskein/tangles.hpp"
#include "wskein/variables.hpp"
#include "wskein/verifier.hpp"
