#pragma once

#include "pfaffcheck/errors.hpp"
#include "pfaffcheck/rational.hpp"
#include "pfaffcheck/multipoly.hpp"
#include "pfaffcheck/matrix.hpp"
#include "pfaffcheck/random.hpp"
#include "pfaffcheck/symfun.hpp"
#include "pfaffcheck/liealg.hpp"
#include "pfaffcheck/centralizer.hpp"
#include "pfaffcheck/divisors.hpp"
#include "pfaffcheck/fibers.hpp"
#include "pfaffcheck/report.hpp"
#include "pfaffcheck/acceptance.hpp"
