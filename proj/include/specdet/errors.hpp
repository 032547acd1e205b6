#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specdet {

/// A pointwise map left its domain (log of a nonpositive value, ...).
/// Carries the offending cell index so callers can branch on kernels.
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, std::size_t cell)
        : std::domain_error(what), cell_(cell) {}

    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

/// The dyadic limit scheme of a singular trace did not settle.
class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A membership question could not be decided from the registered tail data.
class Undecidable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integral that must be finite diverges (non-integrable tail at 0).
class Divergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No registered closed form exists for the requested combination.
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace specdet
