#include "rbda/server.hpp"

#include <functional>
#include <iostream>

#include <httplib.h>

#include "rbda/error.hpp"
#include "rbda/json_util.hpp"

namespace rbda {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";
const std::string kSession = R"(/api/sessions/([0-9a-fA-F]+))";

json error_body(const Error& e) {
  return {{"error", to_string(e.kind())}, {"where", e.where()}, {"message", e.what()}};
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Maps library errors onto status codes and JSON error bodies.
Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const Error& e) {
      res.status = http_status(e.kind());
      res.set_content(error_body(e).dump(), kJson);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(json({{"error", "internal"}, {"message", e.what()}}).dump(), kJson);
    }
  };
}

json body_of(const httplib::Request& req) { return json_util::parse_text(req.body, "request body"); }

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(json_util::canonical_dump(body), kJson);
}

}  // namespace

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_found: return 404;
    case ErrorKind::stage: return 409;
    case ErrorKind::schema:
    case ErrorKind::invariant:
    case ErrorKind::reference:
    case ErrorKind::duplicate:
    case ErrorKind::domain:
    case ErrorKind::unbounded: return 422;
    default: return 500;
  }
}

void register_routes(httplib::Server& server, SessionStore& store) {
  server.Get("/api/health", guarded([](const auto&, auto& res) { reply(res, {{"status", "ok"}}); }));

  server.Get("/api/sessions", guarded([&store](const auto&, auto& res) { reply(res, {{"sessions", store.list()}}); }));

  server.Post("/api/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                const json& doc = body.is_object() && body.contains("problem") ? body["problem"] : body;
                reply(res, store.create(parse_problem(doc)), 201);
              }));

  server.Get(kSession, guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.state(req.matches[1]));
             }));

  server.Get(kSession + "/pairs", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.pairs(req.matches[1]));
             }));

  server.Put(kSession + "/pairs", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.put_pairs(req.matches[1], parse_pairs(body_of(req))));
             }));

  server.Get(kSession + "/rewards", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.rewards(req.matches[1]));
             }));

  server.Put(kSession + "/worst", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const json body = body_of(req);
               reply(res, store.put_worst(req.matches[1], json_util::require_string(
                                                              json_util::require(body, "worst_choice", ""),
                                                              "/worst_choice")));
             }));

  server.Put(kSession + "/statements", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.put_statements(req.matches[1], parse_statements(body_of(req))));
             }));

  server.Put(kSession + "/notes", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const json body = body_of(req);
               reply(res, store.put_notes(req.matches[1], json_util::require_string(
                                                              json_util::require(body, "notes", ""), "/notes")));
             }));

  server.Get(kSession + "/vertices", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.vertices(req.matches[1]));
             }));

  server.Get(kSession + "/report", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               res.status = 200;
               res.set_content(store.report(req.matches[1]), kJson);
             }));

  server.Get(kSession + "/export", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, store.export_session(req.matches[1]));
             }));
}

bool run_server(const ServerOptions& options) {
  SessionStore store(options.sessions_dir);
  httplib::Server server;
  register_routes(server, store);
  if (!options.static_dir.empty() && !server.set_mount_point("/", options.static_dir)) {
    throw Error(ErrorKind::io, options.static_dir, "cannot serve static files from " + options.static_dir);
  }
  if (!server.bind_to_port(options.host, options.port)) return false;
  std::cerr << "listening on http://" << options.host << ':' << options.port << std::endl;
  return server.listen_after_bind();
}

}  // namespace rbda
