#pragma once

#include <string>

namespace manigraph {

// Evaluates a scale-rule expression such as "n/2000", "sqrt(n)/10" or "1".
// Grammar: + - * / ^, parentheses, numeric literals, the variable `n`, and
// the functions sqrt, log, exp. Throws std::invalid_argument on bad input.
double eval_scale_expr(const std::string& expr, double n);

}  // namespace manigraph
