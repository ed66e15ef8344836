#include <doctest.h>

#include <sstream>

#include "txnet/amount.hpp"
#include "txnet/error.hpp"
#include "txnet/ingest.hpp"

using namespace txnet;
using namespace txnet::ingest;

namespace {

std::string utx(const std::string& hash, const std::string& inputs, const std::string& outputs) {
    return R"({"op":"utx","x":{"hash":")" + hash + R"(","time":1,"inputs":[)" + inputs + R"(],"out":[)" + outputs + "]}}";
}

std::string in(const std::string& addr, std::uint64_t v) {
    return R"({"prev_out":{"addr":")" + addr + R"(","value":)" + std::to_string(v) + "}}";
}

std::string out(const std::string& addr, std::uint64_t v) {
    return R"({"addr":")" + addr + R"(","value":)" + std::to_string(v) + "}";
}

Errc code_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::invalid_argument;
}

Transaction tx(std::vector<TxEntry> inputs, std::vector<TxEntry> outputs) {
    return Transaction{"t", 42, std::move(inputs), std::move(outputs)};
}

constexpr std::uint64_t btc = 100'000'000;

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("Btc formats with eight decimals and parses back") {
    CHECK(Btc::from_satoshi(1).to_string() == "0.00000001");
    CHECK(Btc::from_satoshi(123'456'789'012).to_string() == "1234.56789012");
    Btc b;
    REQUIRE(Btc::parse("0.30000000", b));
    CHECK(b.satoshi() == 30'000'000);
    REQUIRE(Btc::parse("7", b));
    CHECK(b.satoshi() == 7 * btc);
    CHECK_FALSE(Btc::parse("-1.0", b));
    CHECK_FALSE(Btc::parse("0.000000001", b));
    CHECK_FALSE(Btc::parse("1e3", b));
    CHECK_FALSE(Btc::parse("", b));
}

TEST_CASE("satoshi_to_btc") {
    CHECK(satoshi_to_btc(100'000'000).to_string() == "1.00000000");
    CHECK(satoshi_to_btc(0).to_string() == "0.00000000");
    CHECK(satoshi_to_btc(1).to_string() == "0.00000001");
}

TEST_CASE("parse a utx frame") {
    const auto msg = parse_feed_message(utx("h1", in("A", 150000000), out("B", 149900000)), 77);
    const auto* t = std::get_if<Transaction>(&msg);
    REQUIRE(t);
    CHECK(t->tx_id == "h1");
    CHECK(t->received_at == 77);
    CHECK(t->inputs == std::vector<TxEntry>{{"A", 150000000}});
    CHECK(t->outputs == std::vector<TxEntry>{{"B", 149900000}});
}

TEST_CASE("non-transaction and broken frames") {
    const auto pong = parse_feed_message(R"({"op":"pong"})");
    REQUIRE(std::holds_alternative<Ignored>(pong));
    CHECK(std::get<Ignored>(pong).op == "pong");

    CHECK(code_of([] { parse_feed_message(R"({"op":"utx","x":{"hash")"); }) == Errc::malformed_message);
    CHECK(code_of([] { parse_feed_message("[1,2]"); }) == Errc::malformed_message);
    CHECK(code_of([] { parse_feed_message(utx("h", "", out("B", 1))); }) == Errc::malformed_message);
    CHECK(code_of([] { parse_feed_message(utx("h", in("A", 1), "")); }) == Errc::malformed_message);
    CHECK(code_of([] { parse_feed_message(utx("h", R"({"prev_out":{"addr":"A","value":-5}})", out("B", 1))); }) ==
          Errc::malformed_message);
    CHECK(code_of([] { parse_feed_message(utx("h", R"({"prev_out":{"value":5}})", out("B", 1))); }) ==
          Errc::malformed_message);
}

TEST_CASE("extract_edges single input") {
    const auto edges = extract_edges(tx({{"A", btc}}, {{"B", 60'000'000}, {"C", 30'000'000}}));
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == Edge{"A", "B", Btc::from_satoshi(60'000'000), 42});
    CHECK(edges[1] == Edge{"A", "C", Btc::from_satoshi(30'000'000), 42});
}

TEST_CASE("extract_edges proportional split") {
    const auto edges = extract_edges(tx({{"A", 75'000'000}, {"B", 25'000'000}}, {{"C", 90'000'000}}));
    REQUIRE(edges.size() == 2);
    CHECK(edges[0].amount.to_string() == "0.67500000");
    CHECK(edges[1].amount.to_string() == "0.22500000");
}

TEST_CASE("extract_edges conserves every output exactly") {
    const auto t = tx({{"A", 1}, {"B", 1}, {"C", 1}}, {{"D", 100}, {"E", 7}});
    const auto edges = extract_edges(t);
    REQUIRE(edges.size() == 6);
    std::int64_t to_d = 0;
    std::int64_t to_e = 0;
    for (const auto& e : edges) (e.target == "D" ? to_d : to_e) += e.amount.satoshi();
    CHECK(to_d == 100);
    CHECK(to_e == 7);
}

TEST_CASE("extract_edges drops self pairs and rejects zero input") {
    const auto edges = extract_edges(tx({{"A", btc}}, {{"A", 10}, {"B", 20}}));
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].target == "B");
    CHECK(code_of([] { extract_edges(tx({{"A", 0}}, {{"B", 0}})); }) == Errc::zero_input_value);
}

TEST_CASE("replay is deterministic and counts records") {
    std::ostringstream log;
    for (int i = 0; i < 100; ++i) {
        log << R"({"received_at_ms":)" << 1000 + i << R"(,"raw":)"
            << utx("h" + std::to_string(i), in("A" + std::to_string(i % 7), 10 + i) + "," + in("Z", 3),
                   out("B" + std::to_string(i % 5), 9))
            << "}\n";
    }
    auto run = [&] {
        std::istringstream is(log.str());
        std::vector<Edge> edges;
        const auto s = replay(is, [&](const Edge& e) { edges.push_back(e); });
        CHECK(s.transactions == 100);
        CHECK(s.edges == edges.size());
        return edges;
    };
    const auto first = run();
    CHECK(first.size() == 200);
    CHECK(first == run());
}

TEST_CASE("replay of an empty log") {
    std::istringstream is("");
    const auto s = replay(is, [](const Edge&) {});
    CHECK(s.transactions == 0);
    CHECK(s.edges == 0);
}

TEST_CASE("replay reports the corrupt line") {
    std::ostringstream log;
    for (int i = 1; i <= 10; ++i) {
        if (i == 7) log << "{\"received_at_ms\":5,\"raw\":{\"op\"\n";
        else log << R"({"received_at_ms":5,"raw":)" << utx("h" + std::to_string(i), in("A", 5), out("B", 4)) << "}\n";
    }
    std::istringstream is(log.str());
    try {
        replay(is, [](const Edge&) {});
        FAIL("expected CorruptLog");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::corrupt_log);
        REQUIRE(e.line());
        CHECK(*e.line() == 7);
    }
}

TEST_CASE("feed processor classifies, logs utx frames and counts duplicates") {
    std::ostringstream log;
    std::size_t edges = 0;
    FeedProcessor p([&](const Edge&) { ++edges; }, &log);
    p.on_frame(utx("h1", in("A", 5), out("B", 4)), 10);
    p.on_frame(utx("h1", in("A", 5), out("B", 4)), 11);
    p.on_frame(R"({"op":"pong"})", 12);
    p.on_frame("garbage", 13);
    p.on_frame(utx("h2", in("A", 0), out("B", 0)), 14);
    const auto& s = p.summary();
    CHECK(s.transactions == 3);  // duplicates and zero-input frames still count
    CHECK(s.duplicate_tx_ids == 1);
    CHECK(s.ignored == 1);
    CHECK(s.malformed == 1);
    CHECK(s.zero_input == 1);
    CHECK(edges == 2);

    std::istringstream is(log.str());
    std::size_t lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == 3);
}

TEST_CASE("endpoint parsing") {
    const auto e = parse_endpoint("wss://ws.blockchain.info/inv");
    CHECK(e.tls);
    CHECK(e.host == "ws.blockchain.info");
    CHECK(e.port == "443");
    CHECK(e.target == "/inv");
    const auto p = parse_endpoint("ws://127.0.0.1:9000");
    CHECK_FALSE(p.tls);
    CHECK(p.port == "9000");
    CHECK(p.target == "/");
    CHECK_THROWS_AS(parse_endpoint("http://x"), Error);
}

}
