#include "taugeo/text.hpp"

#include <cctype>

namespace taugeo {

bool has_top_level_sum(const std::string& text) {
    int depth = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        char ch = text[k];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && k > 0 && (ch == '+' || ch == '-')) {
            char prev = text[k - 1];
            bool exponent = (prev == 'e' || prev == 'E') && k >= 2 &&
                            (std::isdigit(static_cast<unsigned char>(text[k - 2])) || text[k - 2] == '.');
            if (!exponent && prev != '(' && prev != '^' && prev != '*' && prev != '/') return true;
        }
    }
    return false;
}

std::string parenthesize_sum(const std::string& text) {
    return has_top_level_sum(text) ? "(" + text + ")" : text;
}

}  // namespace taugeo
