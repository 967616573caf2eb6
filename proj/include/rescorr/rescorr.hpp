#pragma once

#include "assignment.hpp"
#include "corr.hpp"
#include "exactnum.hpp"
#include "linalg.hpp"
#include "numeric.hpp"
#include "parser.hpp"
#include "poly.hpp"
#include "star.hpp"
