#pragma once

#include <span>
#include <string>

#include "strided/array.hpp"

namespace strided {

/// Python tuple text: "(24, 8)", "(5,)", "()".
std::string format_tuple(std::span<const std::int64_t> values);

/// Nested-list text of an array's elements in C order, e.g.
/// "[[0, 2], [6, 8]]". Structured elements print as tuples.
std::string format_array(const ArrayView& v);

}  // namespace strided
