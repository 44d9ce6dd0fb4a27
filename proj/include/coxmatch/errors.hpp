#pragma once

#include <stdexcept>
#include <string>

namespace coxmatch {

// Thrown when the braid-move closure of a word exceeds the configured node
// budget. Signals an input too large for the exact word-problem algorithm.
struct ClosureBudgetExceeded : std::runtime_error {
    explicit ClosureBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an interval build or an enumeration would exceed its size budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotADescent : std::runtime_error {
    explicit NotADescent(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAMatching : std::runtime_error {
    explicit NotAMatching(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSpecial : std::runtime_error {
    explicit NotSpecial(const std::string& msg) : std::runtime_error(msg) {}
};

// Element outside the domain of a system factorization.
struct NotInDomain : std::runtime_error {
    explicit NotInDomain(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& msg) : std::runtime_error(msg) {}
};

// J does not contain the commuting set of s.
struct InvalidJ : std::runtime_error {
    explicit InvalidJ(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidRightSystem : std::runtime_error {
    InvalidRightSystem(std::string axiom_, const std::string& msg)
        : std::runtime_error(axiom_ + ": " + msg), axiom(std::move(axiom_)) {}
    std::string axiom;
};

struct InvalidLeftSystem : std::runtime_error {
    InvalidLeftSystem(std::string axiom_, const std::string& msg)
        : std::runtime_error(axiom_ + ": " + msg), axiom(std::move(axiom_)) {}
    std::string axiom;
};

struct DihedralInterval : std::runtime_error {
    explicit DihedralInterval(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSpecialMatching : std::runtime_error {
    explicit NoSpecialMatching(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace coxmatch
