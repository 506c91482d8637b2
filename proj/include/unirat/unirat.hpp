#pragma once

#include "algext.hpp"
#include "coef.hpp"
#include "dense.hpp"
#include "errors.hpp"
#include "factor.hpp"
#include "gcd.hpp"
#include "groebner.hpp"
#include "monomial.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "presentation.hpp"
#include "ratfunc.hpp"
#include "subfields.hpp"
#include "unirational.hpp"
