#pragma once

#include "contractum/contraction_checker.hpp"
#include "contractum/error.hpp"
#include "contractum/expression.hpp"
#include "contractum/fixtures.hpp"
#include "contractum/function_families.hpp"
#include "contractum/integral_solver.hpp"
#include "contractum/metric_spaces.hpp"
#include "contractum/picard_engine.hpp"
#include "contractum/space_io.hpp"

namespace contractum {

inline constexpr const char* version = "0.1.0";

} // namespace contractum
