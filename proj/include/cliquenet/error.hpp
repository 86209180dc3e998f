#pragma once

#include <stdexcept>
#include <string>

namespace cliquenet {

/// Base class for every rejection raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid topology, out-of-range symbol, shape mismatch, bad arguments.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A Huffman-coded message does not fit in the available chunk bits.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An augmented message could not be mapped back to an original one.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Malformed network, codec or dataset file.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace cliquenet
