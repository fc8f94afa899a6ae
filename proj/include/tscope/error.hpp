#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or invariant.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// A closure, ambient level or search space exceeded its configured cap.
class CapExceeded : public Error
{
public:
    CapExceeded(std::string const & what_exceeded, std::size_t cap)
        : Error(what_exceeded + " too large (cap " + std::to_string(cap) + ")")
        , cap_(cap)
    {
    }

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

/// A degree table rules out odd-degree points for the requested level.
class NoOddDegree : public Error
{
public:
    using Error::Error;
};

} // namespace tscope
