#pragma once

#include <stdexcept>
#include <string>

namespace designlat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

class InvalidBase : public Error {
public:
    using Error::Error;
};

class InvalidEmbedding : public Error {
public:
    using Error::Error;
};

class NotAdapted : public Error {
public:
    using Error::Error;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ReductionError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace designlat
