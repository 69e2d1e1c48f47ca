// HTTP session service for interactive clients.

#include <csignal>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mek/service.hpp"

namespace {
httplib::Server* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MekLang session server"};
    std::string host = "127.0.0.1";
    int port = 8080;
    long long idle_seconds = 3600;
    std::string static_dir;
    app.add_option("--host", host, "Address to bind");
    app.add_option("--port", port, "Port to listen on")->check(CLI::Range(0, 65535));
    app.add_option("--idle-timeout", idle_seconds, "Evict sessions idle for this many seconds")
        ->check(CLI::PositiveNumber);
    app.add_option("--static", static_dir, "Serve a browser client from this directory")->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    mek::service::SessionStore store{std::chrono::seconds(idle_seconds)};
    httplib::Server server;
    mek::service::register_routes(server, store);
    if (!static_dir.empty()) server.set_mount_point("/", static_dir);

    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    if (port == 0) {
        port = server.bind_to_any_port(host);
        if (port < 0) {
            std::cerr << "cannot bind " << host << '\n';
            return 1;
        }
        std::cout << "listening on http://" << host << ':' << port << std::endl;
        return server.listen_after_bind() ? 0 : 1;
    }
    if (!server.bind_to_port(host, port)) {
        std::cerr << "cannot bind " << host << ':' << port << '\n';
        return 1;
    }
    std::cout << "listening on http://" << host << ':' << port << std::endl;
    return server.listen_after_bind() ? 0 : 1;
}
