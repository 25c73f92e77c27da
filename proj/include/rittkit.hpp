#pragma once

#include "rittkit/rational.hpp"
#include "rittkit/derivative.hpp"
#include "rittkit/diffpoly.hpp"
#include "rittkit/ranking.hpp"
#include "rittkit/io.hpp"
#include "rittkit/mpoly.hpp"
#include "rittkit/factor.hpp"
#include "rittkit/algebra.hpp"
#include "rittkit/reduce.hpp"
#include "rittkit/primes.hpp"
#include "rittkit/decompose.hpp"
#include "rittkit/canonical.hpp"
#include "rittkit/problem.hpp"
