#pragma once

#include "slscc/bnb.hpp"
#include "slscc/closed_forms.hpp"
#include "slscc/errors.hpp"
#include "slscc/formulations.hpp"
#include "slscc/generator.hpp"
#include "slscc/instance.hpp"
#include "slscc/json_io.hpp"
#include "slscc/linear_model.hpp"
#include "slscc/lp_text.hpp"
#include "slscc/oracle.hpp"
#include "slscc/simplex.hpp"
#include "slscc/solution.hpp"
#include "slscc/subproblem.hpp"
#include "slscc/tu_check.hpp"
