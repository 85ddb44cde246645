#pragma once

#include <stdexcept>
#include <string>

namespace rmts {

// Input could not be tokenized/typed. Carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Input parsed but violates a domain invariant (negative score, bad tag, ...).
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A window of the time series has zero variance and cannot be normalized.
class DegenerateSubsequence : public std::runtime_error {
public:
    DegenerateSubsequence(std::string msg, std::size_t window_offset)
        : std::runtime_error(std::move(msg)), window_offset_(window_offset) {}
    std::size_t window_offset() const noexcept { return window_offset_; }

private:
    std::size_t window_offset_;
};

// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
    using std::logic_error::logic_error;
};

// Sample moments are incompatible with the density family.
class FitOutOfDomain : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gram residual too large after re-orthogonalization.
class IllConditionedBasis : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rmts
