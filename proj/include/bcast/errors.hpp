#pragma once

#include <stdexcept>
#include <string>

namespace bcast {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Size or overflow guard tripped (lattice too large, r too big, ...).
class GuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

class DegenerateRates : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPrimeField : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NoCounterexample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace bcast
