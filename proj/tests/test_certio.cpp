#include <doctest.h>

#include "upos/certio.hpp"
#include "upos/errors.hpp"

#include <random>
#include <string>

using namespace upos;

namespace {

WsosCertificate wsos_cert(const RatPoly& a) {
    return std::get<WsosCertificate>(certify_positive_R(a));
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE("certio") {

TEST_CASE("polynomial hashes are stable, tagged, and content-sensitive") {
    std::string h = poly_hash(parse_poly("x^2 + 1"));
    CHECK(h.rfind("fnv1a64:", 0) == 0);
    CHECK(h.size() == 8 + 16);
    CHECK(h == poly_hash(parse_poly("1 0 1"))); // same polynomial, other syntax
    CHECK(h != poly_hash(parse_poly("x^2 + 2")));
    CHECK(h != poly_hash(RatPoly()));
}

TEST_CASE("round trips are byte-exact for every certificate kind") {
    RatPoly sq = parse_poly("x^2 + 1");
    RatPoly quartic = parse_poly("x^4 + 1");
    RatPoly neg = parse_poly("x^2 - 1");
    NegativityWitness w{Rat(0), Rat(-1)};

    std::vector<CertificateEnvelope> envs;
    envs.push_back(envelope_for(sq, wsos_cert(sq)));
    envs.push_back(envelope_for(sq, certify_interval(sq, Rat(-1), Rat(1))));
    envs.push_back(envelope_for(parse_poly("x"), certify_halfline(parse_poly("x"))));
    envs.push_back(envelope_for(quartic, build_pert_cert(quartic, true)));
    envs.push_back(envelope_for(quartic, decompose_R(quartic, 60)));
    envs.push_back(envelope_for(sq, decompose_halfline(sq, 60)));
    envs.push_back(envelope_for(parse_poly("x"), decompose_interval(parse_poly("x"), Rat(1), Rat(2), 60)));
    envs.push_back(envelope_for(neg, w));

    std::vector<std::string> kinds = {"wsos-R",  "wsos-interval", "wsos-interval", "pert-sos",
                                      "karlin", "karlin",        "karlin",        "witness"};
    for (std::size_t i = 0; i < envs.size(); ++i) {
        CAPTURE(i);
        CHECK(envs[i].kind == kinds[i]);
        std::string text = serialize(envs[i]);
        CertificateEnvelope back = deserialize(text);
        CHECK(serialize(back) == text); // canonical: reserialization is identity
        CHECK(back == envs[i]);
    }
}

TEST_CASE("serialization is canonical across independently built envelopes") {
    RatPoly a = parse_poly("x^4 + 1");
    CertificateEnvelope e1 = envelope_for(a, wsos_cert(a));
    CertificateEnvelope e2 = envelope_for(a, wsos_cert(a));
    CHECK(serialize(e1) == serialize(e2));
    CHECK(e1 == e2);
}

TEST_CASE("malformed documents fail with a JSON-pointer location") {
    CHECK_THROWS_AS(deserialize("not json at all"), parse_error);

    std::string good = serialize(envelope_for(parse_poly("x^2 + 1"),
                                              wsos_cert(parse_poly("x^2 + 1"))));
    std::string bad_kind = good;
    std::size_t at = bad_kind.find("wsos-R");
    REQUIRE(at != std::string::npos);
    bad_kind.replace(at, 6, "no-such-kind");
    try {
        deserialize(bad_kind);
        FAIL("expected a parse error for the unknown kind");
    } catch (const parse_error& e) {
        CHECK(e.where == "/kind");
    }

    // A zero-denominator weight inside the interval payload's parallel array.
    RatPoly lin = parse_poly("x");
    std::string doc = serialize(envelope_for(lin, certify_interval(lin, Rat(1), Rat(2))));
    std::size_t arr = doc.find("\"even_weights\":[\"");
    REQUIRE(arr != std::string::npos);
    std::size_t open = arr + std::string("\"even_weights\":[\"").size();
    std::size_t close = doc.find('"', open);
    REQUIRE(close != std::string::npos);
    doc.replace(open, close - open, "1/0");
    try {
        deserialize(doc);
        FAIL("expected a parse error for the 1/0 weight");
    } catch (const parse_error& e) {
        CHECK(e.where == "/payload/even_weights/0");
    }
}

TEST_CASE("verification accepts sound certificates of each kind") {
    RatPoly sq = parse_poly("x^2 + 1");
    CHECK(verify(sq, envelope_for(sq, wsos_cert(sq))).accepted);

    RatPoly lin = parse_poly("x");
    CHECK(verify(lin, envelope_for(lin, certify_interval(lin, Rat(1), Rat(2)))).accepted);
    CHECK(verify(lin, envelope_for(lin, certify_halfline(lin))).accepted);

    RatPoly quartic = parse_poly("x^4 + 1");
    CHECK(verify(quartic, envelope_for(quartic, build_pert_cert(quartic))).accepted);
    CHECK(verify(quartic, envelope_for(quartic, decompose_R(quartic, 60))).accepted);

    RatPoly neg = parse_poly("x^2 - 1");
    NegativityWitness w{Rat(0), Rat(-1)};
    CHECK(verify(neg, envelope_for(neg, w)).accepted);
}

TEST_CASE("semantic rejections name the failing piece") {
    RatPoly sq = parse_poly("x^2 + 1");
    CertificateEnvelope env = envelope_for(sq, wsos_cert(sq));

    // Wrong polynomial, same certificate: the expansion mismatch wins over
    // the stale hash, naming the first differing coefficient.
    VerifyResult r = verify(parse_poly("x^2 + 2"), env);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == "coefficient mismatch at k = 0");

    // A hash-only mismatch (semantics untouched) is still a rejection.
    CertificateEnvelope stale = env;
    stale.meta.poly_hash = poly_hash(parse_poly("x^2 + 2"));
    r = verify(sq, stale);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == "polynomial hash mismatch");

    // Negated tail weight.
    CertificateEnvelope tampered = env;
    auto& cert = std::get<WsosCertificate>(tampered.payload);
    REQUIRE_FALSE(cert.blocks.empty());
    REQUIRE_FALSE(cert.blocks[0].even.empty());
    cert.blocks[0].even[0].w = -cert.blocks[0].even[0].w;
    r = verify(sq, tampered);
    CHECK_FALSE(r.accepted);
    CHECK(contains(r.reason, "negative-weight at index"));

    // Negated weight in an interval certificate's even group.
    RatPoly lin = parse_poly("x");
    CertificateEnvelope ienv = envelope_for(lin, certify_interval(lin, Rat(1), Rat(2)));
    auto& icert = std::get<IntervalCertificate>(ienv.payload);
    REQUIRE_FALSE(icert.even_group.empty());
    icert.even_group[0].w = -icert.even_group[0].w;
    r = verify(lin, ienv);
    CHECK_FALSE(r.accepted);
    CHECK(contains(r.reason, "negative-weight at even_weights/"));

    // Undersized pert threshold.
    RatPoly quartic = parse_poly("x^4 + 1");
    CertificateEnvelope penv = envelope_for(quartic, build_pert_cert(quartic));
    std::get<PertCertificate>(penv.payload).b_exp = 1;
    r = verify(quartic, penv);
    CHECK_FALSE(r.accepted);
    CHECK(contains(r.reason, "threshold"));

    // Karlin tampering: swapped point lists break the alternation pattern.
    CertificateEnvelope kenv = envelope_for(quartic, decompose_R(quartic, 60));
    auto& dec = std::get<KarlinDecomposition>(kenv.payload);
    std::swap(dec.karlin_x, dec.karlin_y);
    r = verify(quartic, kenv);
    CHECK_FALSE(r.accepted);

    CertificateEnvelope kenv2 = envelope_for(quartic, decompose_R(quartic, 60));
    std::get<KarlinDecomposition>(kenv2.payload).beta = Rat(-2);
    r = verify(quartic, kenv2);
    CHECK_FALSE(r.accepted);
    CHECK(contains(r.reason, "beta"));

    // Tampered witness value no longer matches the exact evaluation.
    RatPoly neg = parse_poly("x^2 - 1");
    CertificateEnvelope wenv = envelope_for(neg, NegativityWitness{Rat(0), Rat(-1)});
    std::get<NegativityWitness>(wenv.payload).value = Rat(-2);
    r = verify(neg, wenv);
    CHECK_FALSE(r.accepted);
    CHECK(contains(r.reason, "witness"));
}

TEST_CASE("single-bit mutations never smuggle in changed semantics") {
    RatPoly a = parse_poly("x^4 + 5*x^2 + 4");
    CertificateEnvelope env = envelope_for(a, wsos_cert(a));
    std::string text = serialize(env);
    RatPoly expanded = expand_certificate(std::get<WsosCertificate>(env.payload));
    REQUIRE(expanded == a);

    std::mt19937_64 rng(801);
    int parse_failures = 0, rejected = 0, still_valid = 0;
    for (int it = 0; it < 300; ++it) {
        std::string mutated = text;
        std::size_t byte = rng() % mutated.size();
        mutated[byte] = static_cast<char>(mutated[byte] ^ (1 << (rng() % 8)));
        CertificateEnvelope back;
        try {
            back = deserialize(mutated);
        } catch (const parse_error&) {
            ++parse_failures;
            continue;
        }
        VerifyResult r = verify(a, back);
        if (!r.accepted) {
            ++rejected;
            continue;
        }
        // Accepted after mutation: the semantics must be exactly intact.
        ++still_valid;
        CHECK(expand_certificate(std::get<WsosCertificate>(back.payload)) == a);
    }
    CHECK(parse_failures + rejected + still_valid == 300);
    CHECK(parse_failures > 0); // flips inside structural JSON must not pass
}

} // TEST_SUITE
