#pragma once

#include <stdexcept>

namespace anagram_forge {

/// An input violates the stated preconditions of an operation. Kept distinct
/// from refutations, which are ordinary results.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace anagram_forge
