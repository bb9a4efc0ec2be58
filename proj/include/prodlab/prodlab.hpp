#ifndef PRODLAB_PRODLAB_HPP
#define PRODLAB_PRODLAB_HPP

#include "bernoulli.hpp"
#include "big_float.hpp"
#include "canonical.hpp"
#include "closed_form.hpp"
#include "conjecture.hpp"
#include "const_expr.hpp"
#include "constants.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "evaluator.hpp"
#include "gamma.hpp"
#include "identity.hpp"
#include "product.hpp"
#include "rational.hpp"
#include "sin_pi.hpp"

#endif  // PRODLAB_PRODLAB_HPP
