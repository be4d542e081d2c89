#pragma once

#include "germinv/error.hpp"
#include "germinv/ring.hpp"
#include "germinv/polynomial.hpp"
#include "germinv/parser.hpp"
#include "germinv/matrix.hpp"
#include "germinv/standard_basis.hpp"
#include "germinv/double_point.hpp"
#include "germinv/quasihomogeneous.hpp"
#include "germinv/polar.hpp"
#include "germinv/family.hpp"
#include "germinv/job.hpp"
