#ifndef FOCI_ERRORS_HPP
#define FOCI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foci {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user data: bad file contents, out-of-range ids, empty vocabulary.
class InputError : public Error {
public:
    using Error::Error;
};

// API misuse: dimension mismatches, invalid hyper-parameters, negative factors.
class ContractError : public Error {
public:
    using Error::Error;
};

// Filesystem problems; message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

// A non-finite objective value showed up while fitting.
class NumericError : public Error {
public:
    NumericError(const std::string& what, std::size_t iteration)
        : Error(what), iteration_(iteration) {}
    std::size_t iteration() const { return iteration_; }

private:
    std::size_t iteration_;
};

// None of a question's words appear in the vocabulary.
class OutOfVocabularyError : public Error {
public:
    using Error::Error;
};

// An evaluation run ended with nothing to average.
class EvalError : public Error {
public:
    using Error::Error;
};

}  // namespace foci

#endif
