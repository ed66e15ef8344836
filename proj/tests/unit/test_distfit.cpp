#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "txnet/distfit.hpp"
#include "txnet/error.hpp"
#include "txnet/synth.hpp"

using namespace txnet;
using namespace txnet::distfit;

namespace {

Errc code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::invalid_argument;
}

double alpha_of(const ModelFit& f) { return std::get<PowerLaw>(f.params).alpha; }

// sup_x |F_emp(x) - F_model(x)| over every integer from xmin to past the max.
double ks_oracle(std::vector<std::uint64_t> data, const Params& p, std::uint64_t xmin) {
    std::erase_if(data, [&](auto x) { return x < xmin; });
    const auto top = *std::max_element(data.begin(), data.end());
    double sup = 0;
    for (std::uint64_t x = xmin; x <= top + 3; ++x) {
        const auto below = std::count_if(data.begin(), data.end(), [&](auto v) { return v <= x; });
        const double emp = static_cast<double>(below) / static_cast<double>(data.size());
        const double model = 1.0 - tail_survival(p, xmin, x + 1);
        sup = std::max(sup, std::abs(emp - model));
    }
    return sup;
}

// Hurwitz zeta by direct summation plus the integral remainder.
double zeta_sum(double alpha, std::uint64_t from) {
    double s = 0;
    for (std::uint64_t k = 1'000'000; k >= from; --k) s += std::pow(static_cast<double>(k), -alpha);
    return s + std::pow(1e6 + 0.5, 1 - alpha) / (alpha - 1);
}

std::vector<std::uint64_t> lognormal_sample(double mu, double sigma, std::size_t n, std::uint64_t seed) {
    synth::Rng rng(seed);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(std::exp(mu + sigma * rng.normal())))));
    return out;
}

}  // namespace

TEST_SUITE("distfit") {

TEST_CASE("continuity-corrected closed form") {
    const std::vector<std::uint64_t> data{2, 2, 2, 2};
    CHECK(continuity_corrected_alpha(data, 2) == doctest::Approx(1.0 + 4.0 / (4.0 * std::log(2.0 / 1.5))).epsilon(1e-14));
    CHECK(continuity_corrected_alpha(data, 2) == doctest::Approx(4.4757).epsilon(1e-4));
    CHECK(code_of([&] { continuity_corrected_alpha(data, 3); }) == Errc::insufficient_tail);
}

TEST_CASE("exact MLE sits at the likelihood maximum") {
    const std::vector<std::uint64_t> data{2, 2, 2, 2};
    CHECK(code_of([&] { fit_power_law(data, 2); }) == Errc::degenerate_data);

    const auto sample = synth::sample_power_law(2.2, 3, 2000, 4);
    const auto f = fit_power_law(sample, 3);
    CHECK(f.xmin == 3);
    CHECK_FALSE(f.xmin_scanned);
    const auto loglik = [&](double alpha) {
        double s = 0;
        for (auto x : sample) s += -alpha * std::log(static_cast<double>(x));
        return s - static_cast<double>(sample.size()) * std::log(zeta_sum(alpha, 3));
    };
    const double a = alpha_of(f);
    CHECK(f.log_likelihood == doctest::Approx(loglik(a)).epsilon(1e-9));
    CHECK(loglik(a) > loglik(a - 1e-3));
    CHECK(loglik(a) > loglik(a + 1e-3));
}

TEST_CASE("power-law recovery from synthetic samples") {
    const auto data = synth::sample_power_law(2.5, 1, 10'000, 12345);
    const auto f = fit_power_law(data, 1);
    CHECK(alpha_of(f) >= 2.4);
    CHECK(alpha_of(f) <= 2.6);
    CHECK(f.ks_stat >= 0.0);
    CHECK(f.ks_stat <= 1.0);
}

TEST_CASE("xmin scan picks the smallest KS") {
    auto data = synth::sample_power_law(2.2, 5, 3000, 3);
    synth::Rng rng(8);
    for (int i = 0; i < 2000; ++i) data.push_back(1 + rng.below(4));
    const auto f = fit_power_law(data, std::nullopt);
    CHECK(f.xmin_scanned);
    std::vector<std::uint64_t> distinct(data.begin(), data.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto x : distinct) {
        const auto tail = std::count_if(data.begin(), data.end(), [&](auto v) { return v >= x; });
        if (tail < 2) break;
        const auto g = fit_power_law(data, x);
        if (x < f.xmin) CHECK(g.ks_stat > f.ks_stat);
        else CHECK(g.ks_stat >= f.ks_stat);
    }
    CHECK(f.xmin >= 4);
    CHECK(f.xmin <= 8);
}

TEST_CASE("KS statistic equals the integer-by-integer supremum") {
    const auto data = synth::sample_power_law(2.3, 2, 400, 77);
    for (std::uint64_t xmin : {2, 3, 5}) {
        const auto f = fit_power_law(data, xmin);
        CHECK(f.ks_stat == doctest::Approx(ks_oracle(data, f.params, xmin)).epsilon(1e-12));
        for (auto fam : {Family::log_normal, Family::exponential, Family::poisson}) {
            const auto a = fit_alternative(data, fam, xmin);
            CHECK(a.ks_stat == doctest::Approx(ks_oracle(data, a.params, xmin)).epsilon(1e-12));
            CHECK(ks_statistic(data, a.params, xmin) == a.ks_stat);
        }
    }
}

TEST_CASE("power-law tail survival matches direct summation") {
    const Params p = PowerLaw{2.5};
    const double norm = zeta_sum(2.5, 3);
    for (std::uint64_t x : {3, 4, 10, 100}) CHECK(tail_survival(p, 3, x) == doctest::Approx(zeta_sum(2.5, x) / norm).epsilon(1e-9));
    CHECK(tail_survival(p, 3, 3) == doctest::Approx(1.0));
}

TEST_CASE("alternative families") {
    const std::vector<std::uint64_t> fives(50, 5);
    const auto pois = fit_alternative(fives, Family::poisson, 1);
    CHECK(std::get<Poisson>(pois.params).lambda == 5.0);

    const auto ln = fit_alternative(lognormal_sample(1.0, 0.5, 10'000, 21), Family::log_normal, 1);
    const auto& p = std::get<LogNormal>(ln.params);
    CHECK(p.mu >= 0.95);
    CHECK(p.mu <= 1.05);
    CHECK(p.sigma >= 0.45);
    CHECK(p.sigma <= 0.55);

    const std::vector<std::uint64_t> geo{3, 4, 5, 6};
    const auto ex = fit_alternative(geo, Family::exponential, 3);
    CHECK(std::get<Exponential>(ex.params).lambda == doctest::Approx(1.0 / (4.5 - 3 + 1)));
    CHECK(tail_survival(ex.params, 3, 5) == doctest::Approx(std::pow(1 - 1.0 / 2.5, 2)));

    CHECK(code_of([] { fit_alternative(std::vector<std::uint64_t>{1, 2, 9}, Family::poisson, 9); }) ==
          Errc::insufficient_tail);
    CHECK(code_of([&] { fit_alternative(fives, Family::log_normal, 1); }) == Errc::degenerate_data);
    CHECK(code_of([] { fit_power_law(std::vector<std::uint64_t>{0, 1, 2}, 1); }) == Errc::invalid_observation);
    CHECK(code_of([] { fit_alternative(std::vector<std::uint64_t>{1, 2}, Family::power_law, 1); }) ==
          Errc::invalid_argument);
}

TEST_CASE("bootstrap determinism and single replicate") {
    const auto data = synth::sample_power_law(2.5, 1, 500, 5);
    const auto f = fit_power_law(data, 1);
    const auto a = gof_bootstrap(data, f, 20, 99);
    const auto b = gof_bootstrap(data, f, 20, 99);
    CHECK(a == b);
    CHECK(a.replicates == 20);
    CHECK(a.seed == 99);
    const auto one = gof_bootstrap(data, f, 1, 3);
    CHECK((one.p_value == 0.0 || one.p_value == 1.0));
}

TEST_CASE("bootstrap p-values are rarely small for a correctly specified model") {
    int accepted = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto data = synth::sample_power_law(2.5, 1, 300, 1000 + seed);
        const auto f = fit_power_law(data, 1);
        if (gof_bootstrap(data, f, 100, seed).p_value > 0.05) ++accepted;
    }
    CHECK(accepted >= 90);
}

TEST_CASE("KS shrinks as the sample grows") {
    for (double alpha : {2.0, 2.5, 3.0}) {
        CAPTURE(alpha);
        double previous = 1.0;
        for (std::size_t n : {100, 1000, 10000}) {
            const auto f = fit_power_law(synth::sample_power_law(alpha, 1, n, 31), 1);
            CHECK(f.ks_stat < previous);
            previous = f.ks_stat;
        }
        CHECK(previous < 0.02);
    }
}

TEST_CASE("bootstrap p-values look uniform under the null") {
    int small = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto data = synth::sample_power_law(2.5, 1, 200, 5000 + seed);
        if (gof_bootstrap(data, fit_power_law(data, 1), 100, seed).p_value < 0.1) ++small;
    }
    const double fraction = small / 200.0;
    CHECK(fraction >= 0.02);
    CHECK(fraction <= 0.2);
}

TEST_CASE("ccdf is a survival function") {
    const auto data = synth::sample_power_law(2.2, 1, 2000, 8);
    const auto s = ccdf_series(data);
    REQUIRE(!s.empty());
    CHECK(s.front().second == 1.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i].first > s[i - 1].first);
        CHECK(s[i].second <= s[i - 1].second);
        CHECK(s[i].second > 0.0);
    }
}

TEST_CASE("ccdf series") {
    using Series = std::vector<std::pair<std::uint64_t, double>>;
    CHECK(ccdf_series(std::vector<std::uint64_t>{1, 1, 2}) == Series{{1, 1.0}, {2, 1.0 / 3.0}});
    CHECK(ccdf_series(std::vector<std::uint64_t>{5}) == Series{{5, 1.0}});
    CHECK(ccdf_series(std::vector<std::uint64_t>{8, 2, 4, 1}) == Series{{1, 1.0}, {2, 0.75}, {4, 0.5}, {8, 0.25}});
    CHECK(code_of([] { ccdf_series(std::vector<std::uint64_t>{}); }) == Errc::empty_input);
}

TEST_CASE("growth series") {
    const auto s = [](std::int64_t sec) { return sec * 1000; };
    ledger::EdgeList one{{{"A", "B", Btc{}, s(1)}, {"C", "D", Btc{}, s(2)}, {"A", "D", Btc{}, s(3)}}, 0, s(60)};
    CHECK(growth_series(one, 60) == std::vector<GrowthPoint>{{60, 4, 3}});
    CHECK(growth_series(ledger::EdgeList{}, 60).empty());
    ledger::EdgeList two{{{"A", "B", Btc{}, s(10)}, {"A", "C", Btc{}, s(70)}}, 0, s(200)};
    CHECK(growth_series(two, 60) == std::vector<GrowthPoint>{{60, 2, 1}, {120, 3, 2}});
}

TEST_CASE("log growth fit") {
    std::vector<std::pair<double, double>> exact;
    for (int t = 1; t <= 100; ++t) exact.emplace_back(t, 2.0 + 3.0 * std::log(t));
    const auto f = fit_log_growth(exact);
    CHECK(std::abs(f.intercept - 2.0) < 1e-9);
    CHECK(std::abs(f.slope - 3.0) < 1e-9);
    CHECK(f.r_squared >= 1.0 - 1e-9);

    std::vector<std::pair<double, double>> flat{{1, 4}, {2, 4}, {3, 4}};
    const auto c = fit_log_growth(flat);
    CHECK(c.slope == 0.0);
    CHECK(c.r_squared == 0.0);
    CHECK(c.intercept == 4.0);

    std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
    CHECK(code_of([&] { fit_log_growth(two); }) == Errc::insufficient_points);
    std::vector<std::pair<double, double>> same{{5, 1}, {5, 2}, {5, 3}};
    CHECK(code_of([&] { fit_log_growth(same); }) == Errc::degenerate_abscissa);
}

TEST_CASE("growth residuals are orthogonal to the regressors") {
    synth::Rng rng(12);
    std::vector<std::pair<double, double>> pts;
    for (int t = 1; t <= 300; ++t) pts.emplace_back(t, 10 + 40 * std::log(t) + 5 * rng.normal());
    const auto f = fit_log_growth(pts);
    double r_sum = 0;
    double r_log = 0;
    double scale = 0;
    for (const auto& [t, y] : pts) {
        const double r = y - f.intercept - f.slope * std::log(t);
        r_sum += r;
        r_log += r * std::log(t);
        scale += std::abs(y) * std::log(t);
    }
    CHECK(std::abs(r_sum) <= 1e-6 * scale);
    CHECK(std::abs(r_log) <= 1e-6 * scale);
    CHECK(f.r_squared >= 0.0);
    CHECK(f.r_squared <= 1.0);
}

}
