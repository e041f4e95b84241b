#ifndef FFH_FFH_HPP
#define FFH_FFH_HPP

// Everything except the command-line layer.

#include "ffh/arith.hpp"
#include "ffh/endomorphism.hpp"
#include "ffh/gap_scan.hpp"
#include "ffh/height.hpp"
#include "ffh/isotriviality.hpp"
#include "ffh/linalg.hpp"
#include "ffh/mpoly.hpp"
#include "ffh/parse.hpp"
#include "ffh/poly.hpp"
#include "ffh/problem.hpp"
#include "ffh/projective.hpp"
#include "ffh/ratfunc.hpp"
#include "ffh/resultant.hpp"

#endif  // FFH_FFH_HPP
