#include "txnet/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include <boost/math/tools/minima.hpp>

#include "special.hpp"
#include "txnet/error.hpp"
#include "txnet/synth.hpp"

namespace txnet::distfit {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::power_law: return "power_law";
        case Family::log_normal: return "log_normal";
        case Family::exponential: return "exponential";
        case Family::poisson: return "poisson";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (auto f : {Family::power_law, Family::log_normal, Family::exponential, Family::poisson})
        if (family_name(f) == name) return f;
    throw Error(Errc::invalid_argument, "unknown family '" + std::string(name) + "'");
}

std::vector<std::uint64_t> positive(std::span<const std::uint64_t> degrees) {
    std::vector<std::uint64_t> out;
    for (auto d : degrees)
        if (d > 0) out.push_back(d);
    return out;
}

namespace {

constexpr double min_pmf = 1e-300;
constexpr double max_alpha = 50.0;

// Tail survival P(X >= x | X >= xmin) for x >= xmin, per family.
class TailModel {
public:
    TailModel(const Params& params, std::uint64_t xmin) : params_(params), xmin_(xmin) {
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, PowerLaw>) {
                    norm_ = special::hurwitz_zeta(p.alpha, static_cast<double>(xmin));
                } else if constexpr (std::is_same_v<T, LogNormal>) {
                    norm_ = special::normal_upper(z(p, static_cast<double>(xmin) - 0.5));
                } else if constexpr (std::is_same_v<T, Poisson>) {
                    norm_ = special::poisson_upper(static_cast<long long>(xmin) - 1, p.lambda);
                } else {
                    norm_ = 1.0;
                }
            },
            params_);
    }

    double survival(std::uint64_t x) const {
        if (x <= xmin_) return 1.0;
        const double xd = static_cast<double>(x);
        return std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, PowerLaw>) {
                    return special::hurwitz_zeta(p.alpha, xd) / norm_;
                } else if constexpr (std::is_same_v<T, LogNormal>) {
                    return norm_ > 0 ? special::normal_upper(z(p, xd - 0.5)) / norm_ : 0.0;
                } else if constexpr (std::is_same_v<T, Exponential>) {
                    return std::pow(1.0 - p.lambda, static_cast<double>(x - xmin_));
                } else {
                    return norm_ > 0 ? special::poisson_upper(static_cast<long long>(x) - 1, p.lambda) / norm_ : 0.0;
                }
            },
            params_);
    }

    double cdf(std::uint64_t x) const { return 1.0 - survival(x + 1); }

    double log_pmf(std::uint64_t x) const {
        const double xd = static_cast<double>(x);
        return std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, PowerLaw>) {
                    return -p.alpha * std::log(xd) - std::log(norm_);
                } else if constexpr (std::is_same_v<T, Exponential>) {
                    if (p.lambda >= 1.0) return x == xmin_ ? 0.0 : std::log(min_pmf);
                    return static_cast<double>(x - xmin_) * std::log1p(-p.lambda) + std::log(p.lambda);
                } else if constexpr (std::is_same_v<T, Poisson>) {
                    return xd * std::log(p.lambda) - p.lambda - std::lgamma(xd + 1.0) - std::log(std::max(norm_, min_pmf));
                } else {
                    return std::log(std::max(survival(x) - survival(x + 1), min_pmf));
                }
            },
            params_);
    }

    // Inverse CDF: smallest x >= xmin with P(X > x) <= 1 - u.
    std::uint64_t quantile(double u) const {
        const double tail = 1.0 - u;
        if (const auto* g = std::get_if<Exponential>(&params_)) {
            if (g->lambda >= 1.0) return xmin_;
            const double steps = std::floor(std::log(tail) / std::log1p(-g->lambda));
            return xmin_ + static_cast<std::uint64_t>(std::min(steps, 1e15));
        }
        std::uint64_t lo = xmin_;
        if (survival(lo + 1) <= tail) return lo;
        std::uint64_t hi = lo + 1;
        while (survival(hi + 1) > tail) {
            if (hi >= synth::power_law_cap) return synth::power_law_cap;
            lo = hi;
            hi = std::min(hi * 2, synth::power_law_cap);
        }
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (survival(mid + 1) > tail) lo = mid;
            else hi = mid;
        }
        return hi;
    }

private:
    static double z(const LogNormal& p, double y) { return (std::log(y) - p.mu) / p.sigma; }

    Params params_;
    std::uint64_t xmin_;
    double norm_ = 1.0;
};

void check_observations(Observations data) {
    for (auto x : data)
        if (x == 0) throw Error(Errc::invalid_observation, "zero observation; drop isolated nodes before fitting");
}

// `tail` is sorted ascending and holds exactly the observations >= xmin.
double ks_sorted(std::span<const std::uint64_t> tail, const TailModel& model, std::uint64_t xmin) {
    const auto n = static_cast<double>(tail.size());
    double gap = 0;
    std::uint64_t previous = xmin;  // last integer already covered is previous - 1
    double emp = 0;
    std::size_t i = 0;
    while (i < tail.size()) {
        const std::uint64_t v = tail[i];
        // F_emp is flat on [previous, v - 1]; F_model peaks at v - 1.
        if (v > previous) gap = std::max(gap, std::abs(emp - model.cdf(v - 1)));
        std::size_t j = i;
        while (j < tail.size() && tail[j] == v) ++j;
        emp = static_cast<double>(j) / n;
        gap = std::max(gap, std::abs(emp - model.cdf(v)));
        previous = v + 1;
        i = j;
    }
    return std::min(gap, 1.0);
}

// Maximizes -alpha sum(ln x) - n ln zeta(alpha, xmin). The log-likelihood is
// concave in alpha, so Brent's method on the bracket finds the optimum.
double power_law_mle(double log_sum, double n, std::uint64_t xmin) {
    const double q = static_cast<double>(xmin);
    // keep q^-alpha clear of underflow so ln zeta stays finite
    const double upper = q > 1 ? std::min(max_alpha, 600.0 / std::log(q)) : max_alpha;
    const auto nll = [&](double a) {
        const double z = special::hurwitz_zeta(a, q);
        return z > 0 ? a * log_sum + n * std::log(z) : std::numeric_limits<double>::max();
    };
    std::uintmax_t iterations = 200;
    const auto [alpha, value] =
        boost::math::tools::brent_find_minima(nll, 1.0 + 1e-9, upper, std::numeric_limits<double>::digits / 2, iterations);
    return alpha;
}

ModelFit fit_sorted(std::span<const std::uint64_t> sorted, Family family, std::uint64_t xmin) {
    if (xmin < 1) throw Error(Errc::invalid_argument, "xmin must be >= 1");
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), xmin);
    const std::span<const std::uint64_t> tail(first, sorted.end());
    if (tail.size() < 2)
        throw Error(Errc::insufficient_tail, std::to_string(tail.size()) + " observations >= xmin " + std::to_string(xmin));

    const auto n = static_cast<double>(tail.size());
    const double shift = static_cast<double>(xmin);
    ModelFit fit;
    fit.xmin = xmin;
    fit.n_tail = tail.size();

    switch (family) {
        case Family::power_law: {
            if (tail.front() == tail.back())
                throw Error(Errc::degenerate_data, "power-law tail holds a single distinct value");
            double log_sum = 0;
            for (auto x : tail) log_sum += std::log(static_cast<double>(x));
            fit.params = PowerLaw{power_law_mle(log_sum, n, xmin)};
            break;
        }
        case Family::log_normal: {
            double mean = 0;
            for (auto x : tail) mean += std::log(static_cast<double>(x));
            mean /= n;
            double var = 0;
            for (auto x : tail) var += std::pow(std::log(static_cast<double>(x)) - mean, 2);
            const double sigma = std::sqrt(var / n);
            if (tail.front() == tail.back() || !(sigma > 0)) throw Error(Errc::degenerate_data, "log-normal tail has zero spread");
            fit.params = LogNormal{mean, sigma};
            break;
        }
        case Family::exponential: {
            double mean = 0;
            for (auto x : tail) mean += static_cast<double>(x);
            mean /= n;
            fit.params = Exponential{1.0 / (mean - shift + 1.0)};
            break;
        }
        case Family::poisson: {
            double mean = 0;
            for (auto x : tail) mean += static_cast<double>(x);
            fit.params = Poisson{mean / n};
            break;
        }
    }

    const TailModel model(fit.params, xmin);
    fit.ks_stat = ks_sorted(tail, model, xmin);
    double ll = 0;
    for (auto x : tail) ll += model.log_pmf(x);
    fit.log_likelihood = ll;
    return fit;
}

ModelFit scan_sorted(std::span<const std::uint64_t> sorted, Family family) {
    std::optional<ModelFit> best;
    std::optional<Error> last_error;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        if (sorted.size() - i < 2) break;
        try {
            auto candidate = fit_sorted(sorted, family, sorted[i]);
            if (!best || candidate.ks_stat < best->ks_stat) best = std::move(candidate);
        } catch (const Error& e) {
            if (e.code() != Errc::degenerate_data) throw;
            last_error = e;
        }
    }
    if (!best) {
        if (last_error) throw *last_error;
        throw Error(Errc::insufficient_tail, "fewer than two observations");
    }
    best->xmin_scanned = true;
    return *best;
}

ModelFit fit_any(std::vector<std::uint64_t> data, Family family, std::optional<std::uint64_t> xmin) {
    check_observations(data);
    std::sort(data.begin(), data.end());
    return xmin ? fit_sorted(data, family, *xmin) : scan_sorted(data, family);
}

}  // namespace

double continuity_corrected_alpha(Observations data, std::uint64_t xmin) {
    if (xmin < 1) throw Error(Errc::invalid_argument, "xmin must be >= 1");
    check_observations(data);
    double log_sum = 0;
    std::size_t n = 0;
    for (auto x : data) {
        if (x < xmin) continue;
        log_sum += std::log(static_cast<double>(x) / (static_cast<double>(xmin) - 0.5));
        ++n;
    }
    if (n < 2) throw Error(Errc::insufficient_tail, std::to_string(n) + " observations >= xmin " + std::to_string(xmin));
    return 1.0 + static_cast<double>(n) / log_sum;
}

ModelFit fit_power_law(Observations data, std::optional<std::uint64_t> xmin) {
    return fit_any({data.begin(), data.end()}, Family::power_law, xmin);
}

ModelFit fit_alternative(Observations data, Family family, std::uint64_t xmin) {
    if (family == Family::power_law) throw Error(Errc::invalid_argument, "use fit_power_law for the power law");
    return fit_any({data.begin(), data.end()}, family, xmin);
}

ModelFit fit(Observations data, Family family, std::optional<std::uint64_t> xmin) {
    return fit_any({data.begin(), data.end()}, family, xmin);
}

double tail_survival(const Params& params, std::uint64_t xmin, std::uint64_t x) {
    return TailModel(params, xmin).survival(x);
}

double ks_statistic(Observations data, const Params& params, std::uint64_t xmin) {
    std::vector<std::uint64_t> tail;
    for (auto x : data)
        if (x >= xmin) tail.push_back(x);
    if (tail.empty()) throw Error(Errc::insufficient_tail, "no observations >= xmin");
    std::sort(tail.begin(), tail.end());
    return ks_sorted(tail, TailModel(params, xmin), xmin);
}

GofResult gof_bootstrap(Observations data, const ModelFit& fit, std::uint64_t replicates, std::uint64_t seed) {
    if (replicates < 1) throw Error(Errc::invalid_argument, "bootstrap needs at least one replicate");
    check_observations(data);

    std::vector<std::uint64_t> below;
    for (auto x : data)
        if (x < fit.xmin) below.push_back(x);
    const std::size_t n = data.size();
    const double tail_share = static_cast<double>(n - below.size()) / static_cast<double>(n);

    const TailModel model(fit.params, fit.xmin);
    std::optional<synth::PowerLawSampler> power_law;
    if (const auto* p = std::get_if<PowerLaw>(&fit.params)) power_law.emplace(p->alpha, fit.xmin);

    std::uint64_t at_least_observed = 0;
    std::vector<std::uint64_t> sample(n);
    for (std::uint64_t r = 0; r < replicates; ++r) {
        auto rng = synth::Rng::substream(seed, r);
        for (auto& x : sample) {
            if (below.empty() || rng.uniform() < tail_share)
                x = power_law ? (*power_law)(rng) : model.quantile(rng.uniform());
            else
                x = below[rng.below(below.size())];
        }
        std::sort(sample.begin(), sample.end());
        double ks = 1.0;
        try {
            ks = fit.xmin_scanned ? scan_sorted(sample, fit.family()).ks_stat
                                  : fit_sorted(sample, fit.family(), fit.xmin).ks_stat;
        } catch (const Error&) {
            // a replicate too degenerate to refit counts as a worse fit
        }
        if (ks >= fit.ks_stat) ++at_least_observed;
    }
    return GofResult{static_cast<double>(at_least_observed) / static_cast<double>(replicates), replicates, seed};
}

std::vector<std::pair<std::uint64_t, double>> ccdf_series(Observations data) {
    if (data.empty()) throw Error(Errc::empty_input, "ccdf of an empty sample");
    std::vector<std::uint64_t> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i == 0 || sorted[i] != sorted[i - 1]) out.emplace_back(sorted[i], static_cast<double>(sorted.size() - i) / n);
    return out;
}

std::vector<GrowthPoint> growth_series(const ledger::EdgeList& edges, std::int64_t bin_seconds) {
    if (bin_seconds <= 0) throw Error(Errc::invalid_argument, "bin must be positive");
    std::vector<GrowthPoint> out;
    const std::int64_t bin_ms = bin_seconds * 1000;
    std::unordered_set<std::string> seen;
    std::uint64_t edge_count = 0;
    for (const auto& e : edges.edges) {
        const auto bin = std::max<std::int64_t>(0, e.timestamp_ms - edges.t0) / bin_ms;
        while (static_cast<std::int64_t>(out.size()) <= bin) {
            const auto k = static_cast<std::int64_t>(out.size());
            out.push_back(GrowthPoint{(k + 1) * bin_seconds, seen.size(), edge_count});
        }
        seen.insert(e.source);
        seen.insert(e.target);
        ++edge_count;
        out.back().cumulative_nodes = seen.size();
        out.back().cumulative_edges = edge_count;
    }
    return out;
}

GrowthFit fit_log_growth(std::span<const std::pair<double, double>> series) {
    if (series.size() < 3) throw Error(Errc::insufficient_points, "log growth fit needs at least 3 points");
    const auto n = static_cast<double>(series.size());
    double mean_x = 0;
    double mean_y = 0;
    for (const auto& [t, y] : series) {
        if (!(t > 0)) throw Error(Errc::insufficient_points, "log growth fit needs t > 0");
        mean_x += std::log(t);
        mean_y += y;
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (const auto& [t, y] : series) {
        const double dx = std::log(t) - mean_x;
        sxx += dx * dx;
        sxy += dx * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if (!(sxx > 0)) throw Error(Errc::degenerate_abscissa, "all t are equal");

    GrowthFit fit;
    if (!(syy > 0)) {
        fit.intercept = mean_y;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss_res = 0;
    for (const auto& [t, y] : series) {
        const double r = y - (fit.intercept + fit.slope * std::log(t));
        ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

}  // namespace txnet::distfit
