#pragma once

// Certificate envelopes: one JSON container for every certificate kind the
// library produces, with canonical serialization and bit-exact verification.
//
// Document shape: {"kind": ..., "meta": ..., "payload": ...} with kind one of
// wsos-R, wsos-interval, pert-sos, karlin, witness. Rationals are "num/den"
// strings in lowest terms, dyadics are "m*2^-e" strings, and polynomials are
// arrays of rational strings in ascending degree order. Numbers that carry
// certificate content are never encoded as JSON floats.

#include <map>
#include <string>
#include <variant>

#include "upos/arith.hpp"
#include "upos/interval.hpp"
#include "upos/karlin.hpp"
#include "upos/pertsos.hpp"
#include "upos/poly.hpp"
#include "upos/usos.hpp"

namespace upos {

// Content hash of the canonical text of A: "fnv1a64:" + 16 hex digits.
std::string poly_hash(const RatPoly& a);

struct CertMeta {
    std::string poly_hash;
    std::string tool = "upos";
    std::string version = "0.1.0";
    std::map<std::string, long> params; // per-kind knobs: b_exp, kappa, prec, ...
};

using CertPayload = std::variant<WsosCertificate, IntervalCertificate, PertCertificate,
                                 KarlinDecomposition, NegativityWitness>;

struct CertificateEnvelope {
    std::string kind;
    CertMeta meta;
    CertPayload payload;
};

// Fill kind, the polynomial hash, and the kind's parameters.
CertificateEnvelope envelope_for(const RatPoly& a, const WsosCertificate& cert);
CertificateEnvelope envelope_for(const RatPoly& a, const IntervalCertificate& cert);
CertificateEnvelope envelope_for(const RatPoly& a, const PertCertificate& cert);
CertificateEnvelope envelope_for(const RatPoly& a, const KarlinDecomposition& dec);
CertificateEnvelope envelope_for(const RatPoly& a, const NegativityWitness& w);

// Canonical: equal envelopes always produce identical bytes.
std::string serialize(const CertificateEnvelope& env);

// Throws parse_error carrying a JSON-pointer path on malformed input.
CertificateEnvelope deserialize(const std::string& text);

// Envelope equality is byte equality of the canonical serialization.
bool operator==(const CertificateEnvelope& l, const CertificateEnvelope& r);

struct VerifyResult {
    bool accepted = false;
    std::string reason; // empty iff accepted
};

// Exact verification, dispatched on kind. Semantic failures come back as
// reject reasons (first failing weight index, first mismatching coefficient);
// only structurally impossible in-memory data throws.
VerifyResult verify(const RatPoly& a, const CertificateEnvelope& env);

} // namespace upos
