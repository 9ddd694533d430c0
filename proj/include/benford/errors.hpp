#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace benford {

// Invalid arguments (digits out of range, non-positive values, bad bases)
// are reported with std::domain_error.

/// A numerical routine could not certify the requested tolerance.
/// `achieved()` is the best error bound reached before giving up.
class tolerance_not_met : public std::runtime_error {
public:
    tolerance_not_met(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// The density does not implement the requested capability (e.g. sampling).
class unsupported_operation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// No classifiable values remained after excluding non-positive and
/// non-finite inputs.
class empty_dataset : public std::runtime_error {
public:
    empty_dataset(const std::string& what, std::size_t excluded)
        : std::runtime_error(what), excluded_(excluded) {}

    std::size_t excluded() const noexcept { return excluded_; }

private:
    std::size_t excluded_;
};

} // namespace benford
