#pragma once

#include <stdexcept>
#include <string>

namespace wittlab {

/// Malformed input: bad DSL text, violated preconditions, caps exceeded.
class input_error : public std::invalid_argument {
   public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input outside the domain where a decision procedure exists.
class unsupported_domain : public std::domain_error {
   public:
    explicit unsupported_domain(const std::string& what) : std::domain_error(what) {}
};

}  // namespace wittlab
