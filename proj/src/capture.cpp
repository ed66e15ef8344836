#include <chrono>
#include <functional>
#include <string>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/ssl.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/ssl.hpp>
#include <boost/beast/websocket.hpp>
#include <boost/beast/websocket/ssl.hpp>

#include "txnet/error.hpp"
#include "txnet/ingest.hpp"

namespace txnet::ingest {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
namespace ssl = net::ssl;
using tcp = net::ip::tcp;

namespace {

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

[[noreturn]] void connect_failed(const Endpoint& ep, const std::string& stage, const beast::error_code& ec) {
    throw Error(Errc::connect_failed, ep.host + ":" + ep.port + " " + stage + ": " + ec.message());
}

// Reads frames until the deadline fires or the peer goes away. Returns true
// when the peer closed first.
template <class WsStream>
bool read_until(WsStream& ws, net::io_context& ioc, std::chrono::steady_clock::time_point deadline,
                FeedProcessor& processor) {
    beast::flat_buffer buffer;
    bool timed_out = false;
    bool closed_early = false;

    net::steady_timer timer(ioc, deadline);
    timer.async_wait([&](const beast::error_code& ec) {
        if (ec) return;
        timed_out = true;
        beast::get_lowest_layer(ws).cancel();
    });

    std::function<void()> read_next = [&] {
        ws.async_read(buffer, [&](const beast::error_code& ec, std::size_t) {
            if (ec) {
                if (!timed_out) {
                    closed_early = true;
                    timer.cancel();
                }
                return;
            }
            processor.on_frame(beast::buffers_to_string(buffer.data()), now_ms());
            buffer.consume(buffer.size());
            if (!timed_out) read_next();
        });
    };
    read_next();
    ioc.run();
    return closed_early;
}

template <class WsStream>
void open_session(WsStream& ws, const Endpoint& ep, const tcp::resolver::results_type& addresses) {
    beast::error_code ec;
    beast::get_lowest_layer(ws).connect(addresses, ec);
    if (ec) connect_failed(ep, "connect", ec);

    if constexpr (!std::is_same_v<typename WsStream::next_layer_type, beast::tcp_stream>) {
        if (!SSL_set_tlsext_host_name(ws.next_layer().native_handle(), ep.host.c_str()))
            connect_failed(ep, "sni", beast::error_code(static_cast<int>(::ERR_get_error()), net::error::get_ssl_category()));
        ws.next_layer().handshake(ssl::stream_base::client, ec);
        if (ec) connect_failed(ep, "tls handshake", ec);
    }

    ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::client));
    ws.handshake(ep.host, ep.target, ec);
    if (ec) connect_failed(ep, "websocket handshake", ec);
    ws.text(true);
    ws.write(net::buffer(subscribe_message.data(), subscribe_message.size()), ec);
    if (ec) connect_failed(ep, "subscribe", ec);
}

template <class WsStream>
void shutdown(WsStream& ws) {
    beast::error_code ignored;
    beast::get_lowest_layer(ws).socket().shutdown(tcp::socket::shutdown_both, ignored);
    beast::get_lowest_layer(ws).socket().close(ignored);
}

}  // namespace

Endpoint parse_endpoint(std::string_view url) {
    Endpoint ep;
    std::string_view rest;
    if (url.starts_with("ws://")) {
        rest = url.substr(5);
    } else if (url.starts_with("wss://")) {
        ep.tls = true;
        rest = url.substr(6);
    } else {
        throw Error(Errc::invalid_argument, "endpoint must start with ws:// or wss://: " + std::string(url));
    }
    const auto slash = rest.find('/');
    const std::string_view authority = rest.substr(0, slash);
    ep.target = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    const auto colon = authority.rfind(':');
    if (colon == std::string_view::npos) {
        ep.host = std::string(authority);
        ep.port = ep.tls ? "443" : "80";
    } else {
        ep.host = std::string(authority.substr(0, colon));
        ep.port = std::string(authority.substr(colon + 1));
    }
    if (ep.host.empty() || ep.port.empty() || ep.port.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::invalid_argument, "bad endpoint authority: " + std::string(url));
    return ep;
}

CaptureSummary capture(const CaptureOptions& options, const EdgeSink& sink) {
    if (options.duration <= std::chrono::milliseconds::zero())
        throw Error(Errc::invalid_argument, "capture duration must be positive");
    const Endpoint ep = parse_endpoint(options.endpoint);

    net::io_context ioc;
    tcp::resolver resolver(ioc);
    beast::error_code ec;
    const auto addresses = resolver.resolve(ep.host, ep.port, ec);
    if (ec) connect_failed(ep, "resolve", ec);

    FeedProcessor processor(sink, options.log);
    const auto deadline = std::chrono::steady_clock::now() + options.duration;
    bool closed_early = false;

    if (ep.tls) {
        ssl::context ctx(ssl::context::tls_client);
        ctx.set_default_verify_paths();
        ctx.set_verify_mode(ssl::verify_peer);
        ctx.set_verify_callback(ssl::host_name_verification(ep.host));
        websocket::stream<beast::ssl_stream<beast::tcp_stream>> ws(ioc, ctx);
        open_session(ws, ep, addresses);
        closed_early = read_until(ws, ioc, deadline, processor);
        shutdown(ws);
    } else {
        websocket::stream<beast::tcp_stream> ws(ioc);
        open_session(ws, ep, addresses);
        closed_early = read_until(ws, ioc, deadline, processor);
        shutdown(ws);
    }

    processor.summary().truncated = closed_early;
    return processor.summary();
}

}  // namespace txnet::ingest
