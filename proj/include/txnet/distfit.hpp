#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "txnet/ledger.hpp"

namespace txnet::distfit {

enum class Family { power_law, log_normal, exponential, poisson };

std::string_view family_name(Family f);
// Accepts the names above; throws Error(invalid_argument).
Family parse_family(std::string_view name);

struct PowerLaw {
    double alpha = 0;
};
struct LogNormal {
    double mu = 0;
    double sigma = 0;
};
// Discrete exponential (geometric) on the support shifted to xmin:
// P(X >= x) = (1 - lambda)^(x - xmin).
struct Exponential {
    double lambda = 0;
};
// Poisson(lambda) conditioned on X >= xmin.
struct Poisson {
    double lambda = 0;
};

using Params = std::variant<PowerLaw, LogNormal, Exponential, Poisson>;

struct ModelFit {
    Params params;
    std::uint64_t xmin = 1;
    bool xmin_scanned = false;  // xmin chosen by KS minimization
    std::uint64_t n_tail = 0;
    double ks_stat = 0;
    double log_likelihood = 0;

    Family family() const { return static_cast<Family>(params.index()); }
};

struct GofResult {
    double p_value = 0;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const GofResult&, const GofResult&) = default;
};

struct GrowthFit {
    double intercept = 0;
    double slope = 0;
    double r_squared = 0;
};

struct GrowthPoint {
    std::int64_t t_seconds = 0;  // end of the bin, relative to the window start
    std::uint64_t cumulative_nodes = 0;
    std::uint64_t cumulative_edges = 0;

    friend bool operator==(const GrowthPoint&, const GrowthPoint&) = default;
};

// Observations must be >= 1; zero degrees are filtered out beforehand.
using Observations = std::span<const std::uint64_t>;

// Drops zeros (isolated nodes) from a degree sequence.
std::vector<std::uint64_t> positive(std::span<const std::uint64_t> degrees);

// Closed-form approximation alpha = 1 + n / sum ln(x / (xmin - 0.5)) over the
// tail. Good for xmin of about 6 and up; strongly biased at xmin = 1.
double continuity_corrected_alpha(Observations data, std::uint64_t xmin);

// Exact discrete power-law MLE: maximizes the zeta-normalized likelihood of
// the tail. With no xmin, every distinct value leaving at least two tail
// observations is tried and the one with the smallest KS statistic wins
// (ties to the smaller xmin). Throws Error(insufficient_tail) when fewer than
// two observations reach xmin, Error(degenerate_data) when the tail holds a
// single distinct value (no finite maximizer), Error(invalid_observation) for
// zeros.
ModelFit fit_power_law(Observations data, std::optional<std::uint64_t> xmin);

// Tail-restricted MLE for the other families. log_normal: mean and standard
// deviation of ln x; exponential: lambda = 1 / (mean - xmin + 1);
// poisson: lambda = tail mean. Throws Error(degenerate_data) when the fitted
// parameters leave the valid range (e.g. sigma = 0, or a zero Poisson mean).
ModelFit fit_alternative(Observations data, Family family, std::uint64_t xmin);
ModelFit fit(Observations data, Family family, std::optional<std::uint64_t> xmin);

// Sup-norm distance between the empirical tail CDF and the model CDF over
// every integer x >= xmin.
double ks_statistic(Observations data, const Params& params, std::uint64_t xmin);

// Model tail survival P(X >= x | X >= xmin).
double tail_survival(const Params& params, std::uint64_t xmin, std::uint64_t x);

// Semiparametric bootstrap: below-xmin values are resampled empirically,
// tail values drawn from the fitted model, and each replicate refitted the
// same way as `fit`. Replicate r uses substream (seed, r), so the result
// does not depend on evaluation order.
GofResult gof_bootstrap(Observations data, const ModelFit& fit, std::uint64_t replicates, std::uint64_t seed);

// (degree, P(X >= degree)) at each distinct value, ascending.
std::vector<std::pair<std::uint64_t, double>> ccdf_series(Observations data);

// Cumulative distinct addresses and edges at the end of each bin of
// `bin_seconds`, from edges.t0 through the bin holding the last edge.
std::vector<GrowthPoint> growth_series(const ledger::EdgeList& edges, std::int64_t bin_seconds);

// Least squares y = a + b ln t. Constant y gives b = 0 and r_squared = 0.
// Throws Error(insufficient_points) for fewer than 3 points or t <= 0, and
// Error(degenerate_abscissa) when all t are equal.
GrowthFit fit_log_growth(std::span<const std::pair<double, double>> series);

}  // namespace txnet::distfit
