#pragma once

#include <stdexcept>
#include <string>

namespace fmacomp {

/// Input outside an operation's mathematical or kernel domain.
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A result or intermediate left the representable range and could not be
/// recovered by rescaling.
class range_error : public std::range_error {
  public:
    using std::range_error::range_error;
};

/// Invalid trial or distribution parameters.
class config_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace fmacomp
