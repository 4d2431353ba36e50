#pragma once

#include <stdexcept>
#include <string>

namespace bw {

/// An operation was called outside its documented domain.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or invalid serialized input (wrong schema tag, bad field, broken invariant).
class schema_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Geometric construction ran out of numerical room (tube radius or sampling).
class degeneracy_error : public std::runtime_error {
public:
    degeneracy_error(int depth, const std::string& what)
        : std::runtime_error("degenerate geometry at depth " + std::to_string(depth) + ": " + what), depth_(depth) {}
    int depth() const noexcept { return depth_; }

private:
    int depth_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bw
