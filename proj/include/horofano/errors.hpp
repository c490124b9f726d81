#ifndef HOROFANO_ERRORS_HPP
#define HOROFANO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace horofano {

/// Input that violates a mathematical precondition (non-interior kappa, degenerate polytope, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine that did not reach its tolerance.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed problem file; carries a JSON path to the offending field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace horofano

#endif
