#pragma once

#include <stdexcept>
#include <string>

namespace upos {

// Base class for everything thrown by this library. Operational failures
// (bad input text, I/O, exhausted precision budgets) are exceptions; semantic
// outcomes (a polynomial that is genuinely negative somewhere) are not -- they
// are returned as witnesses so that a caller always gets exactly one of
// {certificate, witness}.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text input (rationals, dyadics, polynomials, JSON certificates).
// `where` is a human-readable location: a character offset for text, a JSON
// pointer for certificate files.
struct parse_error : error {
    std::string where;
    parse_error(const std::string& msg, std::string where_)
        : error(where_.empty() ? msg : msg + " at " + where_), where(std::move(where_)) {}
};

// Exact-arithmetic contract violations (zero denominator, non-dyadic input
// where exactness is required).
struct arith_error : error {
    using error::error;
};

// An operation that requires simple roots was handed a polynomial with a
// repeated factor.
struct not_square_free_error : error {
    using error::error;
};

// An adaptive precision schedule hit its cap without certifying.
struct precision_exhausted_error : error {
    using error::error;
};

// Precondition violation: an operation that requires a polynomial positive
// over R was handed one that is not. The caller should obtain a witness via
// find_witness instead of certifying.
struct not_positive_error : error {
    using error::error;
};

// product_tree was handed a root multiset that is not closed under
// conjugation, so the product is not a real polynomial.
struct imaginary_residue_error : error {
    using error::error;
};

// Retryable: a decomposition could not be certified at the requested working
// precision (e.g. interlacing not yet separable). Callers retry with more bits.
struct precision_insufficient_error : error {
    using error::error;
};

// Bad call-level arguments (empty interval, unsupported domain, ...).
struct domain_error : error {
    using error::error;
};

// Invariants that should be unreachable when the adaptive searches are sound.
struct internal_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace upos
