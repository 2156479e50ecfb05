#ifndef PVT_ERRORS_HPP
#define PVT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pvt {

// Base class for everything this library throws on bad input or failed
// computation. Plain argument/domain misuse still raises the std:: types.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A loaded document is structurally broken: missing field, bad cell, bad header.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// A record violates one of its invariants; message names the field and bound.
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// An iterative solve did not converge or could not bracket a root.
class solver_error : public error {
public:
    explicit solver_error(const std::string& msg) : error(msg) {}
};

} // namespace pvt

#endif
