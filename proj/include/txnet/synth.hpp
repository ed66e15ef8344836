#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "txnet/graph.hpp"
#include "txnet/ledger.hpp"

namespace txnet::synth {

// Portable random source: std::mt19937_64 (bit-exact across standard
// libraries) seeded through splitmix64, with hand-rolled variate conversions
// because the std distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Independent stream for (seed, index), e.g. one per bootstrap replicate.
    static Rng substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer on [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    double normal();

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct PreferentialAttachment {
    std::uint64_t m = 1;
};
struct UniformRandom {
    double p = 0;
};
struct PowerLawSample {
    double alpha = 2.5;
    std::uint64_t xmin = 1;
};

struct GenSpec {
    std::uint64_t n = 1;
    std::variant<PreferentialAttachment, UniformRandom, PowerLawSample> params;
    std::uint64_t seed = 0;
};

// Throws Error(invalid_spec) unless n >= 1, m >= 1 (n > m for PA), p in
// [0, 1], alpha > 1 and xmin >= 1.
void validate(const GenSpec& spec);

// Barabasi-Albert: a seed clique on m + 1 nodes, then each new node attaches
// m distinct arcs to existing nodes with probability proportional to degree
// (collisions are resampled). |E| = C(m+1, 2) + (n - m - 1) m.
graph::TxGraph generate_pa(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

// G(n, p) with every node present, each pair oriented low id -> high id.
graph::TxGraph generate_uniform(std::uint64_t n, double p, std::uint64_t seed);

// Discrete power law P(X = x) = x^-alpha / zeta(alpha, xmin) for x >= xmin,
// drawn by inverse CDF. Normalization uses the Hurwitz zeta function, so
// there is no truncation; draws are clamped at power_law_cap.
std::vector<std::uint64_t> sample_power_law(double alpha, std::uint64_t xmin, std::uint64_t n, std::uint64_t seed);
inline constexpr std::uint64_t power_law_cap = 1'000'000'000'000'000ULL;

// Single draw from the same distribution using a caller-owned generator.
class PowerLawSampler {
public:
    PowerLawSampler(double alpha, std::uint64_t xmin);
    std::uint64_t operator()(Rng& rng) const;

private:
    double alpha_;
    std::uint64_t xmin_;
    double norm_;                 // zeta(alpha, xmin)
    std::vector<double> cdf_;     // P(X <= xmin + k) for the tabulated head
};

// Edge list with synthesized timestamps at 1 s spacing from t0_ms, in arc
// order. Addresses are the graph's interned names.
ledger::EdgeList to_edge_list(const graph::TxGraph& g, std::int64_t t0_ms = 0);

// Synthetic feed recording: utx frames whose arrival rate decays over the
// window (so cumulative counts grow roughly logarithmically), with a mix of
// fresh addresses and preferentially reused ones.
struct CaptureSpec {
    std::uint64_t seed = 2017;
    std::int64_t start_ms = 1'500'000'000'000;
    std::int64_t duration_ms = 6 * 3'600'000;
    std::uint64_t transactions = 3000;
    double reuse_probability = 0.2;
};

// Writes a capture log (JSON lines) and returns the number of records.
std::size_t write_capture_log(const CaptureSpec& spec, std::ostream& out);

}  // namespace txnet::synth
