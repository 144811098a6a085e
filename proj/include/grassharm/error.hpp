#pragma once

#include <stdexcept>
#include <string>

namespace grassharm {

/// Raised when an argument lies outside the domain an operation accepts
/// (p < q, negative degree, non-regular torus point where one is required...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical certificate cannot be established.
class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw domain_error(what);
}

}  // namespace detail
}  // namespace grassharm
