#include "maba/errors.hpp"

namespace maba {

PoleError::PoleError(std::string kernel, std::string left, std::string right)
    : Error("pole of " + kernel + "(" + left + ", " + right + ")"),
      kernel_(std::move(kernel)),
      left_(std::move(left)),
      right_(std::move(right)) {}

}  // namespace maba
