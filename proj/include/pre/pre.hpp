// pre.hpp -- umbrella header
#ifndef PRE_PRE_HPP
#define PRE_PRE_HPP

#include "pre/rational.hpp"
#include "pre/expr.hpp"
#include "pre/parse.hpp"
#include "pre/subdist.hpp"
#include "pre/gpts.hpp"
#include "pre/deriv.hpp"
#include "pre/gpts_io.hpp"
#include "pre/equiv.hpp"
#include "pre/solver.hpp"
#include "pre/axioms.hpp"
#include "pre/random.hpp"

#endif  // PRE_PRE_HPP
