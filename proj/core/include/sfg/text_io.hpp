#pragma once

#include <string>

namespace sfg {

// Shortest round-trip decimal form of a double ("%.17g" pruned); identical
// output across runs is what makes result files byte-comparable.
std::string format_double(double value);

std::string format_int(long long value);

}  // namespace sfg
