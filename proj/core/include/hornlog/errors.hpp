#pragma once

#include <stdexcept>

namespace hornlog {

/// An operation was called on input outside its domain, e.g. a non-RHL
/// theory handed to the evaluator or a relation that is not an equivalence.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hornlog
