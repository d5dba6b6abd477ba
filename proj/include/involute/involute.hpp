#pragma once

// Everything in one include.

#include "involute/errors.hpp"
#include "involute/rational.hpp"
#include "involute/matrix.hpp"
#include "involute/subspace.hpp"
#include "involute/polynomial.hpp"
#include "involute/tensor_basis.hpp"
#include "involute/forms.hpp"
#include "involute/tableau.hpp"
#include "involute/spencer.hpp"
#include "involute/guillemin.hpp"
#include "involute/lie.hpp"
#include "involute/systems.hpp"
#include "involute/cauchy.hpp"
