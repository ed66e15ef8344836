#include "txnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "special.hpp"
#include "txnet/error.hpp"

namespace txnet::synth {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    // rejection keeps the draw unbiased for any n
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

double Rng::normal() {
    double u1;
    do u1 = uniform();
    while (u1 == 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void validate(const GenSpec& spec) {
    if (spec.n < 1) throw Error(Errc::invalid_spec, "n must be >= 1");
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PreferentialAttachment>) {
                if (p.m < 1) throw Error(Errc::invalid_spec, "m must be >= 1");
                if (spec.n <= p.m) throw Error(Errc::invalid_spec, "preferential attachment needs n > m");
            } else if constexpr (std::is_same_v<T, UniformRandom>) {
                if (!(p.p >= 0.0 && p.p <= 1.0)) throw Error(Errc::invalid_spec, "p must lie in [0, 1]");
            } else {
                if (!(p.alpha > 1.0)) throw Error(Errc::invalid_spec, "alpha must be > 1");
                if (p.xmin < 1) throw Error(Errc::invalid_spec, "xmin must be >= 1");
            }
        },
        spec.params);
}

namespace {

std::string node_name(std::uint64_t i) { return "n" + std::to_string(i); }

}  // namespace

graph::TxGraph generate_pa(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
    validate(GenSpec{n, PreferentialAttachment{m}, seed});
    Rng rng(seed);
    graph::TxGraph g(true);
    for (std::uint64_t i = 0; i < n; ++i) g.intern(node_name(i));

    // every arc contributes both endpoints, so a uniform pick from `ends`
    // is a degree-proportional pick
    std::vector<graph::NodeId> ends;
    std::int64_t clock = 0;
    auto add = [&](graph::NodeId s, graph::NodeId t) {
        g.add_arc(s, t, Btc::from_satoshi(satoshi_per_btc), 1000 * clock++);
        ends.push_back(s);
        ends.push_back(t);
    };

    for (graph::NodeId i = 0; i <= m; ++i)
        for (graph::NodeId j = i + 1; j <= m; ++j) add(i, j);

    std::vector<graph::NodeId> chosen;
    for (auto v = static_cast<graph::NodeId>(m + 1); v < n; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            const graph::NodeId target = ends[rng.below(ends.size())];
            if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
        }
        for (graph::NodeId t : chosen) add(v, t);
    }
    return g;
}

graph::TxGraph generate_uniform(std::uint64_t n, double p, std::uint64_t seed) {
    validate(GenSpec{n, UniformRandom{p}, seed});
    Rng rng(seed);
    graph::TxGraph g(true);
    for (std::uint64_t i = 0; i < n; ++i) g.intern(node_name(i));
    std::int64_t clock = 0;
    for (graph::NodeId i = 0; i < n; ++i)
        for (graph::NodeId j = i + 1; j < n; ++j)
            if (rng.uniform() < p) g.add_arc(i, j, Btc::from_satoshi(satoshi_per_btc), 1000 * clock++);
    return g;
}

PowerLawSampler::PowerLawSampler(double alpha, std::uint64_t xmin) : alpha_(alpha), xmin_(xmin) {
    validate(GenSpec{1, PowerLawSample{alpha, xmin}, 0});
    norm_ = special::hurwitz_zeta(alpha, static_cast<double>(xmin));
    constexpr std::size_t head = 4096;
    cdf_.reserve(head);
    double acc = 0;
    for (std::size_t k = 0; k < head; ++k) {
        acc += std::pow(static_cast<double>(xmin + k), -alpha) / norm_;
        cdf_.push_back(std::min(acc, 1.0));
    }
}

std::uint64_t PowerLawSampler::operator()(Rng& rng) const {
    const double u = rng.uniform();
    if (u < cdf_.back()) {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return xmin_ + static_cast<std::uint64_t>(it - cdf_.begin());
    }
    // Beyond the table: smallest x with P(X > x) <= 1 - u.
    const double tail = 1.0 - u;
    auto survival_after = [&](std::uint64_t x) { return special::hurwitz_zeta(alpha_, static_cast<double>(x + 1)) / norm_; };
    std::uint64_t lo = xmin_ + cdf_.size() - 1;  // survival_after(lo) > tail
    std::uint64_t hi = lo + 1;
    while (survival_after(hi) > tail) {
        if (hi >= power_law_cap) return power_law_cap;
        lo = hi;
        hi = std::min(hi * 2, power_law_cap);
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (survival_after(mid) > tail) lo = mid;
        else hi = mid;
    }
    return hi;
}

std::vector<std::uint64_t> sample_power_law(double alpha, std::uint64_t xmin, std::uint64_t n, std::uint64_t seed) {
    validate(GenSpec{n, PowerLawSample{alpha, xmin}, seed});
    const PowerLawSampler draw(alpha, xmin);
    Rng rng(seed);
    std::vector<std::uint64_t> out(n);
    for (auto& x : out) x = draw(rng);
    return out;
}

ledger::EdgeList to_edge_list(const graph::TxGraph& g, std::int64_t t0_ms) {
    std::vector<ingest::Edge> edges;
    edges.reserve(g.arc_count());
    std::int64_t i = 0;
    for (const auto& a : g.arcs())
        edges.push_back(ingest::Edge{g.address(a.source), g.address(a.target), a.amount, t0_ms + 1000 * i++});
    auto list = ledger::make_edge_list(std::move(edges));
    list.t0 = t0_ms;
    return list;
}

namespace {

constexpr std::string_view base58 = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

std::string fresh_address(Rng& rng) {
    std::string a = "1";
    for (int i = 0; i < 33; ++i) a += base58[rng.below(base58.size())];
    return a;
}

std::string tx_hash(Rng& rng) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string h;
    for (int i = 0; i < 64; ++i) h += hex[rng.below(16)];
    return h;
}

std::uint64_t pick_count(Rng& rng, double p1, double p2) {
    const double u = rng.uniform();
    return u < p1 ? 1 : (u < p1 + p2 ? 2 : 3);
}

}  // namespace

std::size_t write_capture_log(const CaptureSpec& spec, std::ostream& out) {
    if (spec.transactions == 0 || spec.duration_ms <= 0)
        throw Error(Errc::invalid_spec, "capture fixture needs transactions and a positive duration");
    Rng rng(spec.seed);

    std::vector<std::string> addresses;
    std::vector<std::size_t> ends;  // address index per edge endpoint
    auto choose = [&]() -> std::size_t {
        if (!ends.empty() && rng.uniform() < spec.reuse_probability) return ends[rng.below(ends.size())];
        addresses.push_back(fresh_address(rng));
        return addresses.size() - 1;
    };

    // Arrival k sits at tau((1 + D/tau)^((k + u)/N) - 1): intensity ~ 1/(t + tau).
    const double tau = 600'000.0;
    const double span = std::log1p(static_cast<double>(spec.duration_ms) / tau);
    const auto n = static_cast<double>(spec.transactions);

    std::size_t written = 0;
    for (std::uint64_t k = 0; k < spec.transactions; ++k) {
        const double frac = (static_cast<double>(k) + rng.uniform()) / n;
        const auto offset = static_cast<std::int64_t>(tau * std::expm1(frac * span));
        const std::int64_t at = spec.start_ms + std::min(offset, spec.duration_ms - 1);

        std::vector<std::size_t> ins;
        for (auto i = pick_count(rng, 0.8, 0.15); i > 0; --i) ins.push_back(choose());
        std::vector<std::size_t> outs;
        for (auto i = pick_count(rng, 0.3, 0.6); i > 0; --i)
            outs.push_back(rng.uniform() < 0.05 ? ins[rng.below(ins.size())] : choose());

        nlohmann::ordered_json x;
        x["hash"] = tx_hash(rng);
        x["time"] = at / 1000;
        std::uint64_t total_in = 0;
        x["inputs"] = nlohmann::ordered_json::array();
        for (auto a : ins) {
            const std::uint64_t value = 10'000 + rng.below(500'000'000);
            total_in += value;
            x["inputs"].push_back({{"prev_out", {{"addr", addresses[a]}, {"value", value}}}});
        }
        std::uint64_t remaining = total_in - std::min<std::uint64_t>(total_in / 2, 1'000 + rng.below(20'000));
        x["out"] = nlohmann::ordered_json::array();
        for (std::size_t o = 0; o < outs.size(); ++o) {
            const std::uint64_t value = o + 1 == outs.size() ? remaining : rng.below(remaining + 1);
            remaining -= value;
            x["out"].push_back({{"addr", addresses[outs[o]]}, {"value", value}});
        }
        for (auto a : ins)
            for (auto b : outs)
                if (a != b) {
                    ends.push_back(a);
                    ends.push_back(b);
                }

        nlohmann::ordered_json record;
        record["received_at_ms"] = at;
        record["raw"] = {{"op", "utx"}, {"x", std::move(x)}};
        out << record.dump() << '\n';
        ++written;
    }
    if (!out) throw Error(Errc::io_error, "writing capture log");
    return written;
}

}  // namespace txnet::synth
