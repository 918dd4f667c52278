#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cechdr/polynomial.hpp"

namespace cechdr {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

using Definitions = std::map<std::string, Polynomial>;

// Grammar: integers and rationals (a/b), variables, + - * ^, parentheses;
// an ideal is a comma-separated list of polynomials in brackets.  Non-variable
// identifiers resolve through the definitions table when one is given.
Polynomial parse_polynomial(const std::string& text, const VariableContext& ctx,
                            const Definitions* defs = nullptr);
std::vector<Polynomial> parse_ideal_text(const std::string& text, const VariableContext& ctx,
                                         const Definitions* defs = nullptr);

// Identifiers in order of first appearance; used when no --vars is given.
std::vector<std::string> collect_identifiers(const std::string& text);

}  // namespace cechdr
