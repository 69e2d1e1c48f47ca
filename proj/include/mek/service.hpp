#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "mek/engine.hpp"
#include "mek/persistence.hpp"
#include "mek/wire.hpp"

namespace mek::service {

struct SessionSnapshot {
    std::string id;
    BoardState board;
    Mechanic mechanic;
    Mode mode = Mode::normal;
    std::int64_t revision = 0;
};

struct ExecutionOutcome {
    ExecutionResult result;
    std::int64_t revision = 0;
    Mode mode = Mode::normal;
};

/// In-memory sessions with idle eviction. Requests on one session are
/// serialized by a per-session mutex; distinct sessions proceed in parallel.
class SessionStore {
public:
    using Clock = std::chrono::steady_clock;

    explicit SessionStore(std::chrono::seconds idle_ttl = std::chrono::hours(1),
                          std::function<Clock::time_point()> now = &Clock::now)
        : ttl_(idle_ttl), now_(std::move(now)), rng_(std::random_device{}()) {}

    SessionSnapshot create() {
        auto entry = std::make_shared<Entry>();
        std::lock_guard lock(mu_);
        evict_locked();
        std::string id;
        do {
            id = new_id_locked();
        } while (sessions_.count(id));
        entry->state.id = id;
        entry->last_used = now_();
        sessions_.emplace(id, entry);
        return entry->state;
    }

    std::optional<SessionSnapshot> get(const std::string& id) {
        return with_session(id, [](Entry& e) { return e.state; });
    }

    bool erase(const std::string& id) {
        std::lock_guard lock(mu_);
        return sessions_.erase(id) > 0;
    }

    std::optional<ExecutionOutcome> click(const std::string& id, Vec2 pos) {
        return with_session(id, [&](Entry& e) {
            ExecutionOutcome out{execute_click(e.state.board, e.state.mechanic, pos, e.state.mode), 0, e.state.mode};
            e.state.board = out.result.board;
            out.revision = ++e.state.revision;
            return out;
        });
    }

    std::optional<ExecutionOutcome> sweep(const std::string& id, int count) {
        return with_session(id, [&](Entry& e) {
            ExecutionOptions options;
            options.record_trace = false;
            ExecutionOutcome out;
            for (int i = 0; i < count; ++i) {
                out.result = mek::sweep(e.state.board, e.state.mechanic, options);
                if (out.result.error) break;
                e.state.board = out.result.board;
            }
            out.revision = ++e.state.revision;
            out.mode = e.state.mode;
            return out;
        });
    }

    std::optional<std::int64_t> put_mechanic(const std::string& id, Mechanic m) {
        return with_session(id, [&](Entry& e) {
            e.state.mechanic = std::move(m);
            return ++e.state.revision;
        });
    }

    std::optional<std::int64_t> put_board(const std::string& id, const BoardState& b) {
        return with_session(id, [&](Entry& e) {
            e.state.board = b;
            return ++e.state.revision;
        });
    }

    std::optional<std::int64_t> set_mode(const std::string& id, Mode mode) {
        return with_session(id, [&](Entry& e) {
            e.state.mode = mode;
            return ++e.state.revision;
        });
    }

    std::size_t size() {
        std::lock_guard lock(mu_);
        evict_locked();
        return sessions_.size();
    }

private:
    struct Entry {
        std::mutex mu;
        SessionSnapshot state;
        Clock::time_point last_used;
    };

    template <typename F>
    auto with_session(const std::string& id, F&& f) -> std::optional<decltype(f(std::declval<Entry&>()))> {
        std::shared_ptr<Entry> entry;
        {
            std::lock_guard lock(mu_);
            evict_locked();
            const auto it = sessions_.find(id);
            if (it == sessions_.end()) return std::nullopt;
            entry = it->second;
            entry->last_used = now_();
        }
        std::lock_guard lock(entry->mu);
        return f(*entry);
    }

    void evict_locked() {
        const auto now = now_();
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            if (now - it->second->last_used > ttl_) {
                it = sessions_.erase(it);
            } else {
                ++it;
            }
        }
    }

    std::string new_id_locked() {
        static constexpr char kHex[] = "0123456789abcdef";
        std::string id;
        for (int i = 0; i < 2; ++i) {
            std::uint64_t v = rng_();
            for (int k = 0; k < 16; ++k, v >>= 4) id += kHex[v & 0xf];
        }
        return id;
    }

    std::chrono::seconds ttl_;
    std::function<Clock::time_point()> now_;
    std::mt19937_64 rng_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

inline nlohmann::json state_to_json(const SessionSnapshot& s) {
    return {
        {"id", s.id},
        {"revision", s.revision},
        {"mode", mode_name(s.mode)},
        {"board", board_to_json(s.board)},
        {"mechanic", nlohmann::json::parse(encode_mechanic(s.mechanic))},
    };
}

inline nlohmann::json outcome_to_json(const ExecutionOutcome& o) {
    return {
        {"revision", o.revision},
        {"mode", mode_name(o.mode)},
        {"board", board_to_json(o.result.board)},
        {"trace", trace_to_json(o.result.trace)},
        {"steps", o.result.steps},
        {"error", o.result.error ? nlohmann::json(error_name(*o.result.error)) : nlohmann::json(nullptr)},
    };
}

namespace detail {

inline void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
    send_json(res, status, {{"error", code}, {"message", message}});
}

inline void send_not_found(httplib::Response& res) { send_error(res, 404, "NOT_FOUND", "unknown session"); }

inline void send_decode_error(httplib::Response& res, const DecodeError& e) {
    nlohmann::json violations = nlohmann::json::array();
    for (const Violation& v : e.violations()) {
        nlohmann::json item = {{"rule", v.rule}, {"command", v.command}, {"message", v.message}};
        item["tile"] = v.tile ? nlohmann::json(positional_index(*v.tile)) : nlohmann::json(nullptr);
        violations.push_back(std::move(item));
    }
    send_json(res, 422,
              {{"error", decode_error_name(e.code())}, {"where", e.where()}, {"message", e.what()},
               {"violations", std::move(violations)}});
}

inline std::optional<nlohmann::json> parse_body(const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        send_error(res, 400, "BAD_REQUEST", "request body must be a JSON object");
        return std::nullopt;
    }
    return body;
}

}  // namespace detail

/// Mounts the session API under /api/v1 on `server`. The store must outlive it.
inline void register_routes(httplib::Server& server, SessionStore& store) {
    using detail::send_error;
    using detail::send_json;
    using detail::send_not_found;
    static const std::string kSession = R"(/api/v1/sessions/([0-9a-f]+))";

    server.Post("/api/v1/sessions", [&store](const httplib::Request&, httplib::Response& res) {
        send_json(res, 201, state_to_json(store.create()));
    });

    server.Get(kSession, [&store](const httplib::Request& req, httplib::Response& res) {
        if (auto s = store.get(req.matches[1])) {
            send_json(res, 200, state_to_json(*s));
        } else {
            send_not_found(res);
        }
    });

    server.Delete(kSession, [&store](const httplib::Request& req, httplib::Response& res) {
        if (store.erase(req.matches[1])) {
            res.status = 204;
        } else {
            send_not_found(res);
        }
    });

    server.Post(kSession + "/click", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto body = detail::parse_body(req, res);
        if (!body) return;
        const auto x = body->find("x");
        const auto y = body->find("y");
        if (x == body->end() || y == body->end() || !x->is_number_integer() || !y->is_number_integer()) {
            send_error(res, 400, "BAD_REQUEST", "click requires integer fields x and y");
            return;
        }
        const long long px = x->get<long long>();
        const long long py = y->get<long long>();
        if (px < 0 || px >= Playground::kWidth || py < 0 || py >= Playground::kHeight) {
            send_error(res, 400, "BAD_REQUEST", "click position outside the playground");
            return;
        }
        const Vec2 pos{static_cast<int>(px), static_cast<int>(py)};
        if (auto out = store.click(req.matches[1], pos)) {
            send_json(res, 200, outcome_to_json(*out));
        } else {
            send_not_found(res);
        }
    });

    server.Post(kSession + "/sweep", [&store](const httplib::Request& req, httplib::Response& res) {
        int count = 1;
        if (!req.body.empty()) {
            const auto body = detail::parse_body(req, res);
            if (!body) return;
            const auto c = body->find("count");
            if (c != body->end()) {
                if (!c->is_number_integer() || c->get<long long>() < 1 || c->get<long long>() > 10'000) {
                    send_error(res, 400, "BAD_REQUEST", "count must be an integer in 1..10000");
                    return;
                }
                count = c->get<int>();
            }
        }
        if (auto out = store.sweep(req.matches[1], count)) {
            send_json(res, 200, outcome_to_json(*out));
        } else {
            send_not_found(res);
        }
    });

    server.Put(kSession + "/mechanic", [&store](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        if (!store.get(id)) {
            send_not_found(res);
            return;
        }
        Mechanic m;
        try {
            auto doc = nlohmann::json::parse(req.body);
            if (doc.is_object() && doc.contains("mechanic")) doc = doc["mechanic"];
            m = decode_mechanic_json(doc);
        } catch (const nlohmann::json::parse_error&) {
            detail::send_decode_error(res, DecodeError(DecodeErrorCode::malformed, "$", "JSON syntax error"));
            return;
        } catch (const DecodeError& e) {
            detail::send_decode_error(res, e);
            return;
        }
        if (store.put_mechanic(id, std::move(m))) {
            res.status = 204;
        } else {
            send_not_found(res);
        }
    });

    server.Put(kSession + "/board", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto body = detail::parse_body(req, res);
        if (!body) return;
        const auto doc = body->find("board");
        if (doc == body->end() || !doc->is_string()) {
            send_error(res, 400, "BAD_REQUEST", "board requires a string field \"board\"");
            return;
        }
        BoardState b;
        try {
            b = decode_board(doc->get<std::string>());
        } catch (const DecodeError& e) {
            detail::send_decode_error(res, e);
            return;
        }
        if (store.put_board(req.matches[1], b)) {
            res.status = 204;
        } else {
            send_not_found(res);
        }
    });

    server.Post(kSession + "/mode", [&store](const httplib::Request& req, httplib::Response& res) {
        const auto body = detail::parse_body(req, res);
        if (!body) return;
        const auto mode = body->find("mode");
        std::optional<Mode> parsed;
        if (mode != body->end() && mode->is_string()) {
            const auto s = mode->get<std::string>();
            if (s == "normal") parsed = Mode::normal;
            if (s == "brush") parsed = Mode::brush;
        }
        if (!parsed) {
            send_error(res, 400, "BAD_REQUEST", "mode must be \"normal\" or \"brush\"");
            return;
        }
        if (store.set_mode(req.matches[1], *parsed)) {
            res.status = 204;
        } else {
            send_not_found(res);
        }
    });
}

}  // namespace mek::service
