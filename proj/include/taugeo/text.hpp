#pragma once

#include <string>

namespace taugeo {

/// True when the rendered expression has a + or - outside parentheses after its first character.
bool has_top_level_sum(const std::string& text);

/// Wraps text in parentheses when it is a sum.
std::string parenthesize_sum(const std::string& text);

}  // namespace taugeo
