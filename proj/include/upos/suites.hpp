#pragma once

// Benchmark corpora and measurement helpers shared by the CLI bench command
// and the test suites. All generators are deterministic in their seeds.

#include <cstdint>
#include <vector>

#include "upos/poly.hpp"
#include "upos/usos.hpp"

namespace upos {

// Sum of nu squares of random degree-(d/2) polynomials whose integer
// coefficients are drawn uniformly from [-2^coeff_bits, 2^coeff_bits]
// (leading coefficients redrawn while zero). d must be even and >= 2.
RatPoly random_sos(long d, long nu, long coeff_bits, std::uint64_t seed);

// (x-1)^2 (x-2)^2 ... (x-n)^2 - x^2/11237 + 1 with degree = 2n (even >= 2).
RatPoly wilkinson(long degree);

// Random square-free polynomial of the given degree with at least one
// (necessarily simple) real root, hence negative somewhere on R.
RatPoly forced_negative(long degree, long coeff_bits, std::uint64_t seed);

// floor(log2(max |coefficient|)), at least 1; 17 for the degree-10 member of
// the wilkinson family. Zero polynomial measures 0.
long input_bitsize(const RatPoly& a);

// Total bitsize of the stored P and Q coefficients across all blocks; the
// tail weights are derived data, so P and Q are what the certificate has to
// transport.
long output_bitsize(const WsosCertificate& cert);

long total_summands(const WsosCertificate& cert);

struct BenchRow {
    long degree = 0;
    long input_bitsize = 0;
    long output_bitsize = 0;
    long summands = 0;
    long epsilon_exp = 0;
    long kappa = 0;
    double time_ms = 0.0;
};

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares of y against x. r2 is the coefficient of
// determination; a constant x vector yields slope 0 and r2 0.
LinFit least_squares_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace upos
