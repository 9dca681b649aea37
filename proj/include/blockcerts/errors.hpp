#pragma once

#include <stdexcept>
#include <string>

namespace blockcerts {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed JSON, hex, or a document that does not match its schema.
class ParseError : public Error {
public:
    using Error::Error;
};

/// canonical_bytes / certificate_hash called on a certificate with violations.
class InvalidCertificate : public Error {
public:
    using Error::Error;
};

class EmptyBatch : public Error {
public:
    EmptyBatch() : Error("merkle batch must contain at least one leaf") {}
};

class MalformedKey : public Error {
public:
    using Error::Error;
};

class TransactionNotFound : public Error {
public:
    explicit TransactionNotFound(const std::string& id) : Error("transaction not found: " + id) {}
};

class DuplicateTransaction : public Error {
public:
    explicit DuplicateTransaction(const std::string& id) : Error("duplicate transaction id: " + id) {}
};

class UnsupportedScheme : public Error {
public:
    using Error::Error;
};

class UnreachableUrl : public Error {
public:
    using Error::Error;
};

class InvalidValidityWindow : public Error {
public:
    using Error::Error;
};

} // namespace blockcerts
